import pytest
from hypothesis import given
import hypothesis.strategies as st

from quadfact.field import GF, FieldError
from quadfact.pgl2 import (PGL2Elem, cyclic_normal_form, dihedral_normal_form, dihedral_pair,
                           pgl2_order, sylow2_witness)

F3, F5, F9, F4, F13 = GF(3), GF(5), GF(3, 2), GF(2, 2), GF(13)


def M(K, a, b, c, d):
    return PGL2Elem.of(K, a, b, c, d)


def test_orders():
    assert pgl2_order(M(F5, 1, 1, 0, 1)) == 5
    z = F13.from_int(5)          # order 4 in F_13
    assert pgl2_order(PGL2Elem.diag(F13, 1, z)) == 4
    assert pgl2_order(PGL2Elem.identity(F5)) == 1


def test_cyclic_examples():
    nf = cyclic_normal_form(M(F5, 0, 1, 1, 0))
    assert nf.n == 2 and nf.form == M(F5, 1, 0, 0, 4)
    nf = cyclic_normal_form(M(F5, 1, 5, 0, 1))
    assert nf.n == 1 and nf.form.is_identity()
    nf = cyclic_normal_form(M(F3, 1, 2, 0, 1))
    assert nf.n == 3 and nf.kind == "unipotent" and nf.form == M(F3, 1, 1, 0, 1)
    assert nf.sigma == M(F3, 1, 0, 0, 2)


def test_dihedral_examples():
    tau = M(F9, 0, 1, 2, 0)                   # c = 2 = t^2 is a square in F_9
    rho = PGL2Elem.diag(F9, F9.one, F9.gen().v)   # t has order 4
    nf = dihedral_normal_form(tau, rho)
    assert nf.case == "a"
    assert nf.tau == M(F9, 0, 1, 1, 0)
    nf = dihedral_normal_form(M(F5, 1, 3, 0, 4), M(F5, 1, 1, 0, 1))
    assert nf.case == "b" and nf.tau == PGL2Elem.diag(F5, 1, 4)
    w = F4.gen()
    nf = dihedral_normal_form(M(F4, 1, w, 0, 1), M(F4, 1, 1, 0, 1))
    assert nf.case == "c" and nf.tau == M(F4, 1, w, 0, 1)


def test_dihedral_errors():
    with pytest.raises(ValueError):
        dihedral_normal_form(M(F5, 1, 1, 0, 1), M(F5, 1, 1, 0, 1))
    # [[0,1],[2,0]] over F_5: 2 is not a square
    with pytest.raises(FieldError):
        dihedral_normal_form(M(F5, 0, 1, 2, 0), PGL2Elem.diag(F5, 1, 4))


@pytest.mark.parametrize("n,i,sub", [(3, 1, 2), (4, 0, 8), (6, 1, 4), (12, 1, 8)])
def test_sylow_examples(n, i, sub):
    a, b = dihedral_pair(F13, n)
    w = sylow2_witness(a, b * a)
    assert (w.i, w.subgroup_order, w.group_order) == (i, sub, 2 * n)


@pytest.mark.parametrize("K", [F5, F9], ids=["F5", "F9"])
def test_random_normal_forms(K):
    import random
    rng = random.Random(3)
    els = K.lex_elements()
    done = 0
    while done < 50:
        a, b, c, d = (rng.choice(els) for _ in range(4))
        if K.sub(K.mul(a, d), K.mul(b, c)) == 0:
            continue
        A = PGL2Elem.make(K, a, b, c, d)
        try:
            nf = cyclic_normal_form(A)
        except FieldError:
            continue
        assert A.conj(nf.sigma) == nf.form
        assert pgl2_order(nf.form) == nf.n
        done += 1


@st.composite
def invertible(draw, K):
    els = st.sampled_from(K.lex_elements())
    e = draw(st.tuples(els, els, els, els).filter(
        lambda e: K.sub(K.mul(e[0], e[3]), K.mul(e[1], e[2])) != 0))
    return PGL2Elem.make(K, *e)


@given(st.sampled_from([F5, F9, F4]), st.data())
def test_order_is_conjugation_invariant(K, data):
    A, S = data.draw(invertible(K)), data.draw(invertible(K))
    assert pgl2_order(A.conj(S)) == pgl2_order(A)
