import numpy as np
import pytest

from brepkit.errors import InconsistentOrientation, NonManifoldEdge
from brepkit.halfedge import build_half_edge
from brepkit.mesh import TriangleMesh, clean_mesh, load_obj, load_ply, normalize_mesh, save_obj, save_ply


def tetrahedron():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
    t = np.array([[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]])
    return TriangleMesh(v, t)


def test_single_triangle_has_no_twins():
    m = TriangleMesh(np.eye(3), np.array([[0, 1, 2]]))
    he = build_half_edge(m)
    assert he.n_half_edges == 3
    assert (he.twin == -1).all()
    assert not he.watertight


def test_tetrahedron_is_watertight():
    he = build_half_edge(tetrahedron())
    assert he.n_half_edges == 12
    assert (he.twin >= 0).all()
    assert he.watertight
    # twin involution and 3-cycles
    assert (he.twin[he.twin] == np.arange(12)).all()
    nxt = he.next
    assert (nxt[nxt[nxt]] == np.arange(12)).all()


def test_shared_edge_halves_are_mutual_twins():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
    t = np.array([[0, 1, 2], [2, 1, 3]])
    he = build_half_edge(TriangleMesh(v, t))
    shared = [h for h in range(6) if he.twin[h] >= 0]
    assert len(shared) == 2
    a, b = shared
    assert he.twin[a] == b and he.twin[b] == a
    assert he.origin[a] == he.dest[b] and he.dest[a] == he.origin[b]


def test_nonmanifold_edge_rejected():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, -1, 0]], dtype=float)
    t = np.array([[0, 1, 2], [0, 3, 1], [0, 1, 4]])
    with pytest.raises(NonManifoldEdge):
        build_half_edge(TriangleMesh(v, t))


def test_inconsistent_orientation_rejected():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
    t = np.array([[0, 1, 2], [1, 2, 3]])  # edge 1->2 traversed twice
    with pytest.raises(InconsistentOrientation):
        build_half_edge(TriangleMesh(v, t))


def test_clean_mesh_drops_degenerates():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [2, 0, 0]], dtype=float)
    t = np.array([[0, 1, 2], [0, 1, 3]])  # second is collinear
    out = clean_mesh(TriangleMesh(v, t))
    assert out.n_triangles == 1
    assert out.n_vertices == 3


def test_normalize_mesh_bounds():
    m = tetrahedron()
    m.vertices = m.vertices * 3.0 + 11.0
    out, center, scale = normalize_mesh(m)
    lo, hi = out.bounds()
    assert (lo >= -1.0 - 1e-12).all() and (hi <= 1.0 + 1e-12).all()
    assert max(hi - lo) == pytest.approx(2.0)


def test_obj_roundtrip(tmp_path):
    m = tetrahedron()
    path = tmp_path / "tet.obj"
    save_obj(path, m)
    back = load_obj(path)
    assert back.n_vertices == 4 and back.n_triangles == 4
    assert np.allclose(back.vertices, m.vertices)
    assert (back.triangles == m.triangles).all()


def test_ply_roundtrip(tmp_path):
    m = tetrahedron()
    path = tmp_path / "tet.ply"
    save_ply(path, m)
    back = load_ply(path)
    assert np.allclose(back.vertices, m.vertices)
    assert (back.triangles == m.triangles).all()


def test_signed_volume_positive_for_outward_winding():
    assert tetrahedron().signed_volume() > 0


def test_genus_of_tetrahedron_is_zero():
    assert tetrahedron().genus() == 0
