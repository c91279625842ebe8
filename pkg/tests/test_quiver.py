import json

import pytest

from lambdaq import family as fa
from lambdaq.exact import field_make
from lambdaq.quiver import quiver_build


def pts(f, *triples):
    return [fa.point_make(f, *t) for t in triples]


def test_f5_component_is_a4():
    f = field_make("Fp:5", "2")
    g = quiver_build(pts(f, (1, -2, 1)), depth=6)
    assert g.shapes() == ["A(4)"]
    comp = g.components[0]
    head, tail = g.nodes[comp.nodes[0]], g.nodes[comp.nodes[-1]]
    assert head.category == "black_lozenge" and tail.category == "black_square"
    assert all(g.nodes[k].category == "bullet" for k in comp.nodes[1:-1])
    assert all(e.certified for e in g.edges)


def test_q1_singletons_and_cycles():
    f = field_make("Q", "1")
    assert quiver_build(pts(f, (1, -1, 3))).shapes() == ["Singleton"]
    assert quiver_build(pts(f, (1, 0, 0))).shapes() == ["Cycle(1)"]
    assert quiver_build(pts(f, (1, 0, 2))).shapes() == ["Cycle(2)"]
    # in characteristic 2 the two points of the cycle coincide
    assert quiver_build(pts(field_make("Fp:2", "1"), (1, 0, 1))).shapes() == ["Cycle(1)"]


def test_q2_chains_are_truncated():
    f = field_make("Q", "2")
    # the c-chain ends at a non-torsionless square on the mho side
    g = quiver_build(pts(f, (1, -2, 1)), depth=8)
    assert g.shapes() == ["NegNatChain"]
    assert len(g.components[0].nodes) == 9
    assert g.nodes[g.components[0].nodes[-1]].category == "black_square"
    # the d-chain starts at a non-extensionless lozenge on the Omega side
    g = quiver_build(pts(f, (1, -1, 1)), depth=8)
    assert g.shapes() == ["NatChain"]
    assert g.nodes[g.components[0].nodes[0]].category == "black_lozenge"


def test_opaque_cosyzygy_node():
    g = quiver_build(pts(field_make("Q", "2"), (0, 1, 0)))
    assert g.shapes() == ["A(2)"]
    opaque = [n for n in g.nodes.values() if n.kind == "opaque"]
    assert len(opaque) == 1 and opaque[0].dim == 9 and opaque[0].loewy_length == 3


def test_decomposable_syzygy_recorded():
    g = quiver_build(pts(field_make("Q", "2"), (1, -1, 0)))
    assert g.terminals == {"M(1:-1:0)": "Λ(x-y) ⊕ Λzx"}


def test_right_side():
    g = quiver_build(pts(field_make("Q", "2"), (1, -1, 0)), side="right")
    assert g.shapes() == ["A(2)"]


def test_exports_are_deterministic():
    f = field_make("Fp:5", "2")
    a = quiver_build(pts(f, (1, -2, 1), (1, 1, 1)))
    b = quiver_build(pts(f, (1, 1, 1), (1, -2, 1)))
    assert a.to_dot() == b.to_dot()
    doc = json.loads(a.to_json())
    assert doc["schema"] == 1
    assert [n["id"] for n in doc["nodes"]] == sorted(n["id"] for n in doc["nodes"])


def test_bad_arguments():
    f = field_make("Q", "2")
    with pytest.raises(fa.FamilyError):
        quiver_build([])
    with pytest.raises(fa.FamilyError):
        quiver_build(pts(f, (1, 1, 1)), depth=0)
    with pytest.raises(fa.FamilyError):
        quiver_build(pts(f, (1, 1, 1)), side="up")
