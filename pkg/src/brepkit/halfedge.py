"""Half-edge connectivity built on top of a TriangleMesh.

Half-edge 3*f + k runs from triangle f's corner k to corner (k+1) % 3.
twin is -1 on boundary half-edges; a mesh is watertight iff no -1 remains.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentOrientation, NonManifoldEdge
from .mesh import TriangleMesh


@dataclass(eq=False)
class HalfEdgeMesh:
    mesh: TriangleMesh
    origin: np.ndarray  # (H,) origin vertex of each half-edge
    dest: np.ndarray  # (H,) destination vertex
    face: np.ndarray  # (H,) incident face
    next: np.ndarray  # (H,) next half-edge in the face cycle
    twin: np.ndarray  # (H,) opposite half-edge, -1 if boundary
    watertight: bool

    @property
    def n_half_edges(self):
        return len(self.origin)

    @property
    def n_faces(self):
        return self.mesh.n_triangles

    @property
    def n_vertices(self):
        return self.mesh.n_vertices

    def face_half_edges(self, f):
        return (3 * f, 3 * f + 1, 3 * f + 2)

    def face_adjacency(self):
        """(F, 3) neighboring face per half-edge slot, -1 across boundary."""
        adj = np.where(self.twin >= 0, self.face[np.maximum(self.twin, 0)], -1)
        return adj.reshape(-1, 3)

    def vertex_faces(self):
        """List of incident face ids per vertex."""
        out = [[] for _ in range(self.n_vertices)]
        for f, tri in enumerate(self.mesh.triangles):
            for v in tri:
                out[v].append(f)
        return out


def build_half_edge(mesh: TriangleMesh) -> HalfEdgeMesh:
    tris = mesh.triangles
    nf = len(tris)
    origin = tris[:, [0, 1, 2]].reshape(-1)
    dest = tris[:, [1, 2, 0]].reshape(-1)
    face = np.repeat(np.arange(nf, dtype=np.int64), 3)
    nxt = (np.arange(3 * nf, dtype=np.int64) // 3) * 3 + (np.arange(3 * nf) % 3 + 1) % 3

    nv = mesh.n_vertices
    lo = np.minimum(origin, dest)
    hi = np.maximum(origin, dest)
    und = lo.astype(np.int64) * nv + hi
    _, counts = np.unique(und, return_counts=True)
    if counts.size and counts.max() > 2:
        raise NonManifoldEdge("an undirected edge is shared by more than 2 triangles")

    enc = origin.astype(np.int64) * nv + dest
    uniq, dup_counts = np.unique(enc, return_counts=True)
    if dup_counts.size and dup_counts.max() > 1:
        raise InconsistentOrientation("an edge is traversed twice in the same direction")

    order = np.argsort(enc, kind="stable")
    sorted_enc = enc[order]
    renc = dest.astype(np.int64) * nv + origin
    pos = np.searchsorted(sorted_enc, renc)
    twin = np.full(3 * nf, -1, dtype=np.int64)
    in_range = pos < len(sorted_enc)
    cand = np.where(in_range, pos, 0)
    match = in_range & (sorted_enc[cand] == renc)
    twin[match] = order[cand[match]]

    return HalfEdgeMesh(
        mesh=mesh,
        origin=origin,
        dest=dest,
        face=face,
        next=nxt,
        twin=twin,
        watertight=bool((twin >= 0).all()) and nf > 0,
    )
