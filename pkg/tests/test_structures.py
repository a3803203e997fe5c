import random
from itertools import combinations

import pytest

from phicomplex import forms as fm
from phicomplex import structures as st
from phicomplex.scalar import parse
from phicomplex.scalar.poly import ZERO, as_poly

from strategies import random_form, random_multivector

N = 4
X, Y, Z, XI = 1, 2, 3, 4


def e(*idx):
    return fm.basis_form(N, *idx)


def v(*idx):
    return fm.basis_vector(N, *idx)


def c(k):
    return as_poly(k)


def all_bases(p):
    return [e(*i) for i in combinations(range(1, 5), p)]


# operator tables written out by hand from the source construction
PHI_EXPECTED = {
    (X, Y): -e(Z, XI),
    (X, Z): e(Y, XI),
    (Y, Z): -e(X, XI),
    (X, XI): e(Y, Z),
    (Y, XI): -e(X, Z),
    (Z, XI): e(X, Y),
}

D_EXPECTED = {
    (X, Y): v(X, Y),
    (X, Z): v(X, Z),
    (Y, Z): v(Y, Z),
    (X, XI): -v(X, XI),
    (Y, XI): -v(Y, XI),
    (Z, XI): -v(Z, XI),
}


class TestTables:
    @pytest.mark.parametrize("idx", list(PHI_EXPECTED))
    def test_phi_basis(self, idx):
        assert st.phi(e(*idx)) == PHI_EXPECTED[idx]

    def test_phi_as_tensor_sum(self):
        # sum over i of (-1)^i e_i (x) e^{7-i} in the ordered bivector basis
        for i, idx in enumerate(st.BASIS2, start=1):
            target = st.BASIS2[6 - i]
            assert st.phi(e(*idx)) == e(*target) * (-1) ** i

    @pytest.mark.parametrize("idx", list(D_EXPECTED))
    def test_D_basis(self, idx):
        assert st.d_operator(e(*idx)) == D_EXPECTED[idx]

    def test_D_wedge_identity(self):
        w = fm.wedge(st.d_operator(e(X, Y)), st.d_operator(e(Z, XI)))
        assert w == -fm.volume_vector(4)

    def test_varphi_eigenvalues(self):
        assert st.LAMBDA == (-1, -1, -1, 1)
        for mu in range(1, 5):
            assert st.varphi_p(1, e(mu)) == v(mu) * st.LAMBDA[mu - 1]

    def test_wedge3_varphi_diagonal(self):
        diag = []
        for idx in combinations(range(1, 5), 3):
            image = st.varphi_p(3, e(*idx))
            assert image.keys() == [idx]
            diag.append(image[idx])
        assert diag == [c(-1), c(1), c(1), c(1)]

    def test_wedge4_varphi_of_volume(self):
        assert st.varphi_p(4, fm.volume_form(4)) == -fm.volume_vector(4)

    def test_wedge2_varphi_is_D(self):
        for idx in st.BASIS2:
            assert st.varphi_p(2, e(*idx)) == st.d_operator(e(*idx))

    def test_h2_components(self):
        expected = [[0] * 6 for _ in range(6)]
        for k, s in enumerate((1, 1, 1, -1, -1, -1)):
            expected[k][k] = s
        assert st.structure_tables()["h"]["2"] == expected

    def test_signatures(self):
        expected = {1: (-1, -1, -1, 1), 2: (1, 1, 1, -1, -1, -1), 3: (-1, 1, 1, 1), 4: (-1,)}
        for p, sig in expected.items():
            assert st.h_signature(p) == sig
            m = st.h_matrix(p)
            off = [m[i][j] for i in range(len(m)) for j in range(len(m)) if i != j]
            assert all(x == ZERO for x in off)

    def test_unique_diagonal_solution_pair(self):
        assert st.diagonal_solutions() == [(-1, -1, -1, 1), (1, 1, 1, -1)]

    def test_alternate_root_gives_same_D(self):
        for idx in st.BASIS2:
            a = e(*idx)
            assert st.varphi_p(2, a, st.LAMBDA_ALTERNATE) == st.varphi_p(2, a)

    def test_circledast_of_dx(self):
        assert st.circledast(1, e(X)) == e(Y, Z, XI)

    def test_poincare_basis_sign(self):
        for p in range(1, 5):
            for idx in combinations(range(1, 5), p):
                rest = fm.complement(4, idx)
                assert st.poincare_up(e(*idx)) == v(*rest) * st.poincare_sign(idx)


class TestIdentities:
    def test_phi_squared(self):
        for a in all_bases(2):
            assert st.phi(st.phi(a)) == -a

    def test_phi_squared_on_random_forms(self):
        rng = random.Random(11)
        for _ in range(20):
            a = random_form(rng, 4, 2, 0.7)
            assert st.phi(st.phi(a)) == -a

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_poincare_compositions(self, p):
        sign = (-1) ** (p * (4 - p))
        for idx in combinations(range(1, 5), p):
            assert st.poincare_down(st.poincare_up(e(*idx))) == e(*idx) * sign
            assert st.poincare_up(st.poincare_down(v(*idx))) == v(*idx) * sign

    def test_pairing_preserved(self):
        for p in range(1, 5):
            for a in all_bases(p):
                for i in combinations(range(1, 5), p):
                    t = v(*i)
                    lhs = fm.pairing(st.poincare_down(t), st.poincare_up(a))
                    assert lhs == fm.pairing(a, t)

    def test_pairing_preserved_random(self):
        rng = random.Random(12)
        for _ in range(30):
            p = rng.randint(1, 3)
            a = random_form(rng, 4, p, 0.7, 1)
            t = random_multivector(rng, 4, p, 0.7)
            assert fm.pairing(st.poincare_down(t), st.poincare_up(a)) == fm.pairing(a, t)

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_circledast_is_minus_poincare_varphi(self, p):
        for a in all_bases(p):
            assert st.circledast(p, a) == -st.poincare_down(st.varphi_p(p, a))

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_wedge_with_circledast_is_metric(self, p):
        vol = fm.volume_form(4)
        for a in all_bases(p):
            for b in all_bases(p):
                assert fm.wedge(a, st.circledast(p, b)) == vol * (-st.h_form(p, a, b))

    def test_circledast_extends_phi(self):
        for a in all_bases(2):
            assert st.circledast(2, a) == st.phi(a)

    def test_circledast_zero_forms(self):
        f = as_poly(parse("x*xi"))
        assert st.circledast(0, fm.scalar_form(4, f)) == fm.volume_form(4) * f

    def test_h_equals_h_tilde(self):
        for a in all_bases(2):
            for b in all_bases(2):
                assert st.h_form(2, a, b) == st.h_tilde2(a, b)

    def test_h_tilde_worked_value(self):
        a = e(X, Y)
        assert fm.wedge(a, st.phi(a)) == -fm.volume_form(4)
        assert st.h_tilde2(a, a) == c(1)

    def test_circledast_inverse(self):
        rng = random.Random(13)
        for p in range(0, 5):
            a = random_form(rng, 4, p, 0.8)
            assert st.circledast_inverse(st.circledast(p, a)) == a

    def test_codifferential_of_gradient_is_wave_operator(self):
        for src in ("x^2*xi", "cos(z - xi)", "exp(x)*sin(y)", "xi^3 - x*y*z"):
            u = as_poly(parse(src))
            du = fm.d(fm.scalar_form(4, u))
            delta = st.codifferential(du)[()]
            assert delta == st.dalembertian(u)

    def test_codifferential_squares_to_zero(self):
        rng = random.Random(14)
        for _ in range(20):
            a = random_form(rng, 4, rng.randint(1, 3), 0.6, 2)
            assert st.codifferential(st.codifferential(a)).is_zero()

    def test_wrong_grade_rejected(self):
        with pytest.raises(fm.GradeError):
            st.phi(e(X))
        with pytest.raises(fm.GradeError):
            st.d_operator(e(X, Y, Z))


class TestTableExport:
    def test_tables_are_derived(self):
        t = st.structure_tables()
        assert t["basis2"] == ["12", "13", "23", "14", "24", "34"]
        assert t["Phi"]["12"] == {"34": -1}
        assert t["D"]["14"] == {"14": -1}
        assert t["h_signature"]["3"] == [-1, 1, 1, 1]
        assert t["h_tilde2"] == t["h"]["2"]
