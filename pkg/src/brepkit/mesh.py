"""Triangle meshes with OBJ/PLY ingest, cleaning, and normalization."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import MeshLoadError

_DEGENERATE_AREA = 1e-14


@dataclass(eq=False)
class TriangleMesh:
    vertices: np.ndarray  # (V, 3) float64
    triangles: np.ndarray  # (F, 3) int64
    normals: np.ndarray | None = None  # optional per-vertex unit normals

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        if self.normals is not None:
            self.normals = np.asarray(self.normals, dtype=float).reshape(-1, 3)
        if self.triangles.size and (
            self.triangles.min() < 0 or self.triangles.max() >= len(self.vertices)
        ):
            raise MeshLoadError("triangle references out-of-range vertex index")

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_triangles(self):
        return len(self.triangles)

    def triangle_corners(self):
        return self.vertices[self.triangles]  # (F, 3, 3)

    def face_normals(self, normalized=True):
        tc = self.triangle_corners()
        n = np.cross(tc[:, 1] - tc[:, 0], tc[:, 2] - tc[:, 0])
        if normalized:
            ln = np.linalg.norm(n, axis=1, keepdims=True)
            ln[ln == 0.0] = 1.0
            n = n / ln
        return n

    def face_areas(self):
        return 0.5 * np.linalg.norm(self.face_normals(normalized=False), axis=1)

    def face_centroids(self):
        return self.triangle_corners().mean(axis=1)

    def vertex_normals(self):
        """Area-weighted vertex normals."""
        fn = self.face_normals(normalized=False)
        vn = np.zeros_like(self.vertices)
        for k in range(3):
            np.add.at(vn, self.triangles[:, k], fn)
        ln = np.linalg.norm(vn, axis=1, keepdims=True)
        ln[ln == 0.0] = 1.0
        return vn / ln

    def bounds(self):
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def signed_volume(self):
        tc = self.triangle_corners()
        return float(np.einsum("ij,ij->", tc[:, 0], np.cross(tc[:, 1], tc[:, 2]))) / 6.0

    def edges_undirected(self):
        e = np.concatenate(
            [self.triangles[:, [0, 1]], self.triangles[:, [1, 2]], self.triangles[:, [2, 0]]]
        )
        return np.unique(np.sort(e, axis=1), axis=0)

    def euler_characteristic(self):
        return self.n_vertices - len(self.edges_undirected()) + self.n_triangles

    def genus(self):
        """Genus assuming a closed connected orientable surface."""
        return (2 - self.euler_characteristic()) // 2

    def copy(self):
        return TriangleMesh(
            self.vertices.copy(),
            self.triangles.copy(),
            None if self.normals is None else self.normals.copy(),
        )


def clean_mesh(mesh: TriangleMesh, face_attrs=None):
    """Drop degenerate (zero-area) triangles and unreferenced vertices.

    face_attrs: optional list of per-face arrays filtered alongside.
    """
    keep = mesh.face_areas() > _DEGENERATE_AREA
    tris = mesh.triangles[keep]
    used = np.unique(tris)
    remap = np.full(mesh.n_vertices, -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    out = TriangleMesh(
        mesh.vertices[used],
        remap[tris],
        None if mesh.normals is None else mesh.normals[used],
    )
    if face_attrs is None:
        return out
    return out, [np.asarray(a)[keep] for a in face_attrs]


def normalize_mesh(mesh: TriangleMesh, margin=0.0):
    """Center and uniformly scale so the bounding box fits in [-1, 1]^3."""
    lo, hi = mesh.bounds()
    center = 0.5 * (lo + hi)
    half = max(float((hi - lo).max()) / 2.0, 1e-12)
    scale = (1.0 - margin) / half
    out = mesh.copy()
    out.vertices = (out.vertices - center) * scale
    return out, center, scale


def load_obj(path) -> TriangleMesh:
    verts, tris = [], []
    with open(path, "r") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                idx = [int(tok.split("/")[0]) for tok in parts[1:]]
                idx = [i - 1 if i > 0 else len(verts) + i for i in idx]
                if len(idx) != 3:
                    raise MeshLoadError(f"{path}: only triangle faces supported")
                tris.append(idx)
    if not verts or not tris:
        raise MeshLoadError(f"{path}: no geometry found")
    return clean_mesh(TriangleMesh(np.array(verts), np.array(tris)))


def save_obj(path, mesh: TriangleMesh, comment=None):
    with open(path, "w") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        for v in mesh.vertices:
            fh.write(f"v {v[0]:.9g} {v[1]:.9g} {v[2]:.9g}\n")
        for t in mesh.triangles:
            fh.write(f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}\n")


def load_ply(path) -> TriangleMesh:
    """Binary little-endian PLY, triangles only."""
    with open(path, "rb") as fh:
        if fh.readline().strip() != b"ply":
            raise MeshLoadError(f"{path}: not a PLY file")
        fmt = None
        counts = {}
        order = []
        props = {}
        current = None
        while True:
            line = fh.readline()
            if not line:
                raise MeshLoadError(f"{path}: truncated header")
            tokens = line.split()
            if tokens[0] == b"format":
                fmt = tokens[1]
            elif tokens[0] == b"element":
                current = tokens[1].decode()
                counts[current] = int(tokens[2])
                order.append(current)
                props[current] = []
            elif tokens[0] == b"property":
                props[current].append(tokens)
            elif tokens[0] == b"end_header":
                break
        if fmt != b"binary_little_endian":
            raise MeshLoadError(f"{path}: only binary little-endian PLY supported")
        verts = tris = None
        for name in order:
            n = counts[name]
            if name == "vertex":
                sizes = {b"float": "f4", b"float32": "f4", b"double": "f8", b"float64": "f8"}
                try:
                    fields = [(f"c{i}", "<" + sizes[p[1]]) for i, p in enumerate(props[name])]
                except KeyError:
                    raise MeshLoadError(f"{path}: unsupported vertex property type")
                dtype = np.dtype(fields)
                data = np.frombuffer(fh.read(dtype.itemsize * n), dtype=dtype)
                verts = np.stack([data[f"c{i}"].astype(float) for i in range(3)], axis=1)
            elif name == "face":
                tris = np.empty((n, 3), dtype=np.int64)
                for i in range(n):
                    (cnt,) = struct.unpack("<B", fh.read(1))
                    if cnt != 3:
                        raise MeshLoadError(f"{path}: non-triangle face in PLY")
                    tris[i] = struct.unpack("<3i", fh.read(12))
            else:
                raise MeshLoadError(f"{path}: unsupported element {name}")
    if verts is None or tris is None:
        raise MeshLoadError(f"{path}: missing vertex or face element")
    return clean_mesh(TriangleMesh(verts, tris))


def save_ply(path, mesh: TriangleMesh):
    with open(path, "wb") as fh:
        fh.write(b"ply\nformat binary_little_endian 1.0\n")
        fh.write(b"element vertex %d\n" % mesh.n_vertices)
        fh.write(b"property double x\nproperty double y\nproperty double z\n")
        fh.write(b"element face %d\n" % mesh.n_triangles)
        fh.write(b"property list uchar int vertex_indices\n")
        fh.write(b"end_header\n")
        fh.write(np.ascontiguousarray(mesh.vertices, dtype="<f8").tobytes())
        buf = bytearray()
        for t in mesh.triangles:
            buf += struct.pack("<B3i", 3, int(t[0]), int(t[1]), int(t[2]))
        fh.write(bytes(buf))
