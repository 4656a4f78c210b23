"""brepkit: primitive-labeled meshes to watertight B-rep models."""

__version__ = "0.1.0"
