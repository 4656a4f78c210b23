"""Exception types shared across the pipeline stages."""


class BrepkitError(Exception):
    """Base class for all pipeline errors."""


class NonManifoldEdge(BrepkitError):
    """An undirected mesh edge is shared by more than two triangles."""


class InconsistentOrientation(BrepkitError):
    """An interior edge is traversed twice in the same direction."""


class MeshLoadError(BrepkitError):
    """Unreadable or malformed mesh file."""


class GenerationFailed(BrepkitError):
    """Random composite could not produce a watertight case."""


class EmptyMap(BrepkitError):
    """Semantic map has no foreground pixels."""


class NoHits(BrepkitError):
    """A 2D component back-projects onto no mesh face."""


class NoValidCut(BrepkitError):
    """Every graph-cut threshold leaves a single connected component."""


class InsufficientSupport(BrepkitError):
    """Best RANSAC candidate explains fewer than half the samples."""


class NonWatertightInput(BrepkitError):
    """Operation requires a watertight (fully twinned) mesh."""


class NonManifoldPatchBoundary(BrepkitError):
    """Patch boundary self-touches; topology extraction cannot chain it."""


class TangentialContact(BrepkitError):
    """Surfaces touch without a transversal crossing; no curve traced."""


class NoCurves(BrepkitError):
    """Adjacent primitives produced no intersection curve."""


class EmptySurface(BrepkitError):
    """Surface source has no area to sample."""


class StageError(BrepkitError):
    """Pipeline stage failed; carries case id and stage name."""

    def __init__(self, case_id: str, stage: str, message: str):
        super().__init__(f"[{case_id}] {stage}: {message}")
        self.case_id = case_id
        self.stage = stage


class ConfigError(BrepkitError):
    """Invalid pipeline configuration."""
