"""Independent pairing oracle: twisted simplicial cochains on a
triangulated, edge-identified 4g-gon.

The fundamental polygon is coned from one interior vertex and carried as a
planar triangulation together with universal-cover bookkeeping: every
planar node stores the quotient vertex it covers and a deck word relating
it to that vertex's chosen canonical lift.  Boundary edges are identified
in pairs, orientation-reversing, according to the relator.  Equivariant
cochains live on canonical lifts; a registry maps every planar oriented
edge to (quotient edge, sign, deck word), which is all the cup product
needs.  Cross-checking this Alexander-Whitney pairing against the
bar-complex pairing is the reason this module exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonCocycleError
from .lie_backend import InvariantForm, ad_matrix
from .rep_variety import Representation
from .surface_group import (EMPTY_WORD, Word, cochain_on_word, concat,
                            free_reduce, invert, relator, word_to_ints)
from .twisted_cohomology import cochain_blocks, cocycle_residual


@dataclass(frozen=True)
class _Node:
    vertex: int   # quotient vertex id
    deck: Word    # deck word from the vertex's canonical lift


@dataclass(frozen=True)
class _Edge:
    # instances: planar (tail node, head node, same_direction) triples;
    # the first instance is the canonical lift and runs forward
    tail_vertex: int
    head_vertex: int
    word: Word            # holonomy of the canonical lift
    instances: tuple


@dataclass(frozen=True)
class TriangulatedSurfaceComplex:
    """Cone triangulation of the 4g-gon with edge identifications."""

    genus: int
    refinement: int
    n_vertices: int
    nodes: tuple            # of _Node
    edges: tuple            # of _Edge
    triangles: tuple        # of (n0, n1, n2) node indices, AW-ordered, CCW
    registry: dict = field(repr=False)  # (p, q) -> (edge id, sign, deck word)

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_triangles(self):
        return len(self.triangles)

    @property
    def euler_characteristic(self):
        return self.n_vertices - self.n_edges + self.n_triangles

    def to_json_cells(self) -> dict:
        return {
            "genus": self.genus,
            "refinement": self.refinement,
            "n_vertices": self.n_vertices,
            "edges": [
                {"tail": e.tail_vertex, "head": e.head_vertex,
                 "word": word_to_ints(e.word),
                 "n_instances": len(e.instances)}
                for e in self.edges
            ],
            "triangles": [list(t) for t in self.triangles],
            "euler_characteristic": self.euler_characteristic,
        }


def _aw_rotate(tri: tuple) -> tuple:
    """Rotate the CCW vertex cycle so the smallest node id comes first.

    Rotations are even permutations, so the orientation class and hence
    the fundamental cycle are unchanged; the result fixes the ordering
    used by the Alexander-Whitney formula.
    """
    k = tri.index(min(tri))
    return tri[k:] + tri[:k]


def _build_registry(nodes, edges) -> dict:
    # the deck word of a planar face (p, q) relative to the canonical edge
    # lift is the deck word of whichever endpoint covers the canonical tail
    registry = {}
    for eid, edge in enumerate(edges):
        for p, q, forward in edge.instances:
            if forward:
                delta = nodes[p].deck
                registry[(p, q)] = (eid, 1, delta)
                registry[(q, p)] = (eid, -1, delta)
            else:
                delta = nodes[q].deck
                registry[(p, q)] = (eid, -1, delta)
                registry[(q, p)] = (eid, 1, delta)
    return registry


def _make_edge(nodes, tail_vertex, head_vertex, instances) -> _Edge:
    # canonical instance must run forward
    u, v, forward = instances[0]
    if not forward:
        raise AssertionError("canonical instance must be forward")
    word = free_reduce(concat(invert(nodes[u].deck), nodes[v].deck))
    return _Edge(tail_vertex, head_vertex, word, tuple(instances))


def build_complex(genus: int, refinement: int = 0) -> TriangulatedSurfaceComplex:
    """Cone triangulation of the fundamental polygon, optionally refined.

    Refinement 0 has 4g triangles; each barycentric refinement multiplies
    the count by 6 and leaves the quotient Euler characteristic 2 - 2g.
    """
    if genus < 2:
        raise ValueError("genus must be >= 2")
    if refinement < 0:
        raise ValueError("refinement must be >= 0")
    word = relator(genus)
    m = len(word)

    # quotient vertices: 0 = polygon corner class, 1 = cone point
    nodes = [_Node(1, EMPTY_WORD)]            # node 0: center
    prefixes = [EMPTY_WORD]
    for j, e in word[:-1]:
        prefixes.append(concat(prefixes[-1], ((j, e),)))
    for k in range(m):
        nodes.append(_Node(0, prefixes[k]))   # node k+1: corner P_k

    def corner(k):
        return (k % m) + 1

    # generator edges: canonical instance at the +1 occurrence
    occurrences = {}
    for k, (j, e) in enumerate(word):
        occurrences.setdefault(j, {})[e] = k
    gen_edges = []
    for j in range(2 * genus):
        kp = occurrences[j][1]
        km = occurrences[j][-1]
        inst = [(corner(kp), corner(kp + 1), True),
                (corner(km), corner(km + 1), False)]
        gen_edges.append(_make_edge(nodes, 0, 0, inst))
    radial_edges = [
        _make_edge(nodes, 1, 0, [(0, corner(k), True)]) for k in range(m)
    ]
    edges = gen_edges + radial_edges

    triangles = [_aw_rotate((0, corner(k), corner(k + 1))) for k in range(m)]

    cx = TriangulatedSurfaceComplex(
        genus=genus, refinement=0, n_vertices=2,
        nodes=tuple(nodes), edges=tuple(edges), triangles=tuple(triangles),
        registry=_build_registry(nodes, edges),
    )
    for _ in range(refinement):
        cx = _refine(cx)
    return cx


def _refine(cx: TriangulatedSurfaceComplex) -> TriangulatedSurfaceComplex:
    """One barycentric refinement of the twisted complex."""
    nodes = list(cx.nodes)
    n_vertices = cx.n_vertices

    # midpoint nodes: one quotient vertex per old edge, one planar node
    # per instance; the planar midpoint inherits the instance's deck word
    midpoint_node = {}       # unordered planar pair -> node id
    edge_mid_vertex = []     # per old edge: quotient vertex id of midpoint
    for edge in cx.edges:
        v_mid = n_vertices
        n_vertices += 1
        edge_mid_vertex.append(v_mid)
        for p, q, forward in edge.instances:
            delta = nodes[p].deck if forward else nodes[q].deck
            nid = len(nodes)
            nodes.append(_Node(v_mid, delta))
            midpoint_node[frozenset((p, q))] = nid

    center_node = {}
    for t_idx, _ in enumerate(cx.triangles):
        v_c = n_vertices
        n_vertices += 1
        nid = len(nodes)
        nodes.append(_Node(v_c, EMPTY_WORD))
        center_node[t_idx] = nid

    new_edges = []

    # halves of old edges; canonical halves come from the canonical instance
    for eid, edge in enumerate(cx.edges):
        u, v, _ = edge.instances[0]
        m_can = midpoint_node[frozenset((u, v))]
        lo_inst = [(u, m_can, True)]
        hi_inst = [(m_can, v, True)]
        for p, q, forward in edge.instances[1:]:
            m_i = midpoint_node[frozenset((p, q))]
            if forward:
                lo_inst.append((p, m_i, True))
                hi_inst.append((m_i, q, True))
            else:
                # (p -> m) retraces the upper half backwards, (m -> q) the lower
                hi_inst.append((p, m_i, False))
                lo_inst.append((m_i, q, False))
        v_mid = edge_mid_vertex[eid]
        new_edges.append(_make_edge(nodes, edge.tail_vertex, v_mid, lo_inst))
        new_edges.append(_make_edge(nodes, v_mid, edge.head_vertex, hi_inst))

    # spokes: corner-to-center and midpoint-to-center, all single-instance
    for t_idx, tri in enumerate(cx.triangles):
        c = center_node[t_idx]
        for nid in tri:
            new_edges.append(_make_edge(
                nodes, nodes[nid].vertex, nodes[c].vertex, [(nid, c, True)]))
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            m_i = midpoint_node[frozenset((a, b))]
            new_edges.append(_make_edge(
                nodes, nodes[m_i].vertex, nodes[c].vertex, [(m_i, c, True)]))

    new_triangles = []
    for t_idx, (a, b, c) in enumerate(cx.triangles):
        ct = center_node[t_idx]
        m_ab = midpoint_node[frozenset((a, b))]
        m_bc = midpoint_node[frozenset((b, c))]
        m_ca = midpoint_node[frozenset((c, a))]
        for tri in ((a, m_ab, ct), (m_ab, b, ct), (b, m_bc, ct),
                    (m_bc, c, ct), (c, m_ca, ct), (m_ca, a, ct)):
            new_triangles.append(_aw_rotate(tri))

    return TriangulatedSurfaceComplex(
        genus=cx.genus, refinement=cx.refinement + 1, n_vertices=n_vertices,
        nodes=tuple(nodes), edges=tuple(new_edges),
        triangles=tuple(new_triangles), registry=_build_registry(nodes, new_edges),
    )


class TwistedEvaluator:
    """Per-(complex, representation) cache of transports and face data.

    Face values follow the equivariant convention: the value of a cochain
    f on the planar oriented edge (p, q) is sign * Ad(rho(deck)) f_E with
    (E, sign, deck) from the registry.
    """

    def __init__(self, cx: TriangulatedSurfaceComplex, rep: Representation,
                 form: InvariantForm | None = None):
        self.cx = cx
        self.rep = rep
        self.form = form if form is not None else InvariantForm(rep.spec)
        self.gram = self.form.gram
        self._face = {}
        for key, (eid, sign, delta) in cx.registry.items():
            self._face[key] = (eid, sign * ad_matrix(rep.spec,
                                                     self._word_mat(delta)))
        self._edge_transport = [
            ad_matrix(rep.spec, self._word_mat(e.word)) for e in cx.edges
        ]

    def _word_mat(self, word: Word) -> np.ndarray:
        out = np.eye(self.rep.spec.n, dtype=complex)
        for j, e in word:
            out = out @ (self.rep.matrices[j] if e == 1 else self.rep.inverses[j])
        return out

    def face_value(self, f: np.ndarray, p: int, q: int) -> np.ndarray:
        eid, mat = self._face[(p, q)]
        return mat @ f[eid]

    def coboundary1(self, f: np.ndarray) -> np.ndarray:
        """delta1 f per triangle: f(12) - f(02) + f(01)."""
        out = np.zeros((self.cx.n_triangles, self.rep.spec.dim_group),
                       dtype=complex)
        for t, (n0, n1, n2) in enumerate(self.cx.triangles):
            out[t] = (self.face_value(f, n1, n2)
                      - self.face_value(f, n0, n2)
                      + self.face_value(f, n0, n1))
        return out

    def coboundary0(self, s: np.ndarray) -> np.ndarray:
        """delta0 s on canonical edge lifts: Ad(rho(word)) s_head - s_tail."""
        out = np.zeros((self.cx.n_edges, self.rep.spec.dim_group),
                       dtype=complex)
        for eid, edge in enumerate(self.cx.edges):
            out[eid] = (self._edge_transport[eid] @ s[edge.head_vertex]
                        - s[edge.tail_vertex])
        return out

    def cocycle_residual(self, f: np.ndarray) -> float:
        d1 = self.coboundary1(f)
        return float(np.linalg.norm(d1) / max(np.linalg.norm(f), 1.0))

    def cup(self, f: np.ndarray, h: np.ndarray) -> complex:
        """Alexander-Whitney cup product summed over the fundamental cycle."""
        total = 0.0 + 0.0j
        for n0, n1, n2 in self.cx.triangles:
            total += self.face_value(f, n0, n1) @ self.gram @ \
                self.face_value(h, n1, n2)
        return complex(total)

    def pairing(self, f: np.ndarray, h: np.ndarray) -> complex:
        """Antisymmetrized cup pairing (f cup h - h cup f) / 2.

        The Alexander-Whitney product is only homotopy-commutative, so the
        averaging is part of the contract; it changes nothing on
        cohomology classes.
        """
        return 0.5 * (self.cup(f, h) - self.cup(h, f))


def transport_cocycle(rep: Representation, u: np.ndarray,
                      cx: TriangulatedSurfaceComplex,
                      cocycle_tol: float = 1e-8) -> np.ndarray:
    """Group cocycle to twisted simplicial cocycle.

    Each canonical edge lift with holonomy word w receives u(w) via the
    crossed-homomorphism extension.
    """
    res = cocycle_residual(rep, u)
    if res > cocycle_tol:
        raise NonCocycleError(res, cocycle_tol)
    blocks = cochain_blocks(u, rep.genus, rep.spec.dim_group)
    out = np.zeros((cx.n_edges, rep.spec.dim_group), dtype=complex)
    for eid, edge in enumerate(cx.edges):
        out[eid] = cochain_on_word(rep, blocks, edge.word)
    return out


def simplicial_pairing(cx: TriangulatedSurfaceComplex, rep: Representation,
                       f: np.ndarray, h: np.ndarray,
                       form: InvariantForm | None = None,
                       cocycle_tol: float = 1e-8,
                       check: bool = True) -> complex:
    """Antisymmetrized twisted cup-product pairing of two simplicial cocycles."""
    ev = TwistedEvaluator(cx, rep, form)
    if check:
        for g in (f, h):
            res = ev.cocycle_residual(g)
            if res > cocycle_tol:
                raise NonCocycleError(res, cocycle_tol)
    return ev.pairing(f, h)
