"""Tensor product tests.

Oracles: the rank one quasi-R term and the closed form for rank one
diamond vectors are checked against independently coded formulas in the
divided power conventions; the Verma ox highest family is checked
against the lowest ox highest family through the based quotient map
that sends the Verma line of depth k to the extreme line of depth
m - k with coefficient one; adjunction identities tie epsilon to the
contravariant form.  Structural invariants (involution, triangularity,
lattice membership) are asserted directly.
"""

import pytest

from qcb.coeff import LaurentPoly, RationalFn, ONE, R_ZERO, R_ONE, \
    quantum_factorial, lattice_test
from qcb.datum import builtin_datum
from qcb.modules import ModuleRef, module_cb
from qcb.tensor import (
    TensorError, TensorSpace, act, quasi_R, psi_involution, _psi_right,
    diamond, nfold_diamond, transition_matrix, chi_twist, epsilon_op,
    tensor_inner_product)


A1 = builtin_datum("a1")
A2 = builtin_datum("a2")


def vp(n):
    return RationalFn(LaurentPoly({n: 1}))


def lp(terms):
    return RationalFn(LaurentPoly(terms))


def lwhw(datum, lam1, lam2, d1, d2):
    return TensorSpace((ModuleRef.simple_lw(datum, lam1, d1),
                        ModuleRef.simple_hw(datum, lam2, d2)))


def a1_pair(m, n):
    return lwhw(A1, (m,), (n,), m, n)


def lab(*grades):
    return tuple(((g,) if isinstance(g, int) else tuple(g), k)
                 for g, k in grades)


class TestAction:

    def test_e_on_pure(self):
        sp = a1_pair(1, 1)
        t = sp.unit(lab((0, 0), (0, 0)))
        et = act(("E", "1"), t)
        assert et == sp.unit(lab((1, 0), (0, 0)))

    def test_f_on_pure(self):
        sp = a1_pair(1, 1)
        t = sp.unit(lab((0, 0), (0, 0)))
        ft = act(("F", "1"), t)
        assert ft == sp.unit(lab((0, 0), (1, 0)))

    def test_e_divided_power(self):
        sp = a1_pair(2, 1)
        t = sp.unit(lab((0, 0), (0, 0)))
        one_by_one = act(("E", "1"), act(("E", "1"), t))
        direct = act(("E", "1", 2), t)
        assert one_by_one == direct.scale(quantum_factorial(2))

    def test_f_comultiplication_twist(self):
        # F(Exi ox eta) picks v^{-<i, wt eta>} on the first slot term
        sp = a1_pair(2, 2)
        t = sp.unit(lab((1, 0), (0, 0)))
        ft = act(("F", "1"), t)
        assert ft.terms == {
            lab((1, 0), (1, 0)): R_ONE,
            lab((0, 0), (0, 0)): vp(-2) * lp({1: 1, -1: 1}),
        }

    def test_k_diagonal(self):
        sp = a1_pair(1, 1)
        t = sp.unit(lab((1, 0), (1, 0)))
        assert act(("K", "1"), t) == t
        top = sp.unit(lab((1, 0), (0, 0)))
        assert act(("K", "1"), top) == top.scale(vp(2))

    def test_k_bad_length(self):
        sp = a1_pair(1, 1)
        with pytest.raises(TensorError):
            act(("K", (1, 2)), sp.unit(lab((0, 0), (0, 0))))

    def test_invalid_label(self):
        sp = a1_pair(1, 1)
        with pytest.raises(TensorError):
            sp.unit(lab((0, 3), (0, 0)))

    def test_mixed_space_add(self):
        t1 = a1_pair(1, 1).unit(lab((0, 0), (0, 0)))
        t2 = a1_pair(2, 1).unit(lab((0, 0), (0, 0)))
        with pytest.raises(TensorError):
            t1 + t2


class TestQuasiR:

    def test_fixes_highest_second_factor(self):
        sp = a1_pair(2, 1)
        for k in range(3):
            t = sp.unit(lab((k, 0), (0, 0)))
            assert quasi_R(t) == t

    def test_fixes_lowest_first_factor(self):
        sp = a1_pair(1, 2)
        for l in range(3):
            t = sp.unit(lab((0, 0), (l, 0)))
            assert quasi_R(t) == t

    def test_rank1_term(self):
        # Theta(E xi ox F eta) = E xi ox F eta + (v^-1 - v) xi ox eta
        sp = a1_pair(1, 1)
        t = sp.unit(lab((1, 0), (1, 0)))
        out = quasi_R(t)
        assert out.terms == {
            lab((1, 0), (1, 0)): R_ONE,
            lab((0, 0), (0, 0)): lp({-1: 1, 1: -1}),
        }

    def test_rank2_fixes_extremes(self):
        sp = lwhw(A2, (1, 0), (0, 1), 2, 2)
        t = sp.unit(lab(((1, 0), 0), ((0, 0), 0)))
        assert quasi_R(t) == t

    def test_no_truncation_errors(self):
        sp = TensorSpace((ModuleRef.simple_hw(A1, (1,), 1),
                          ModuleRef.simple_lw(A1, (1,), 1)))
        with pytest.raises(TensorError, match="degree bound"):
            quasi_R(sp.unit(lab((1, 0), (1, 0))))

    def test_single_factor_rejected(self):
        sp = TensorSpace((ModuleRef.simple_hw(A1, (1,), 1),))
        with pytest.raises(TensorError):
            quasi_R(sp.unit(lab((0, 0))))


class TestPsi:

    def test_fixes_extreme_pure(self):
        sp = a1_pair(1, 1)
        t = sp.unit(lab((0, 0), (0, 0)))
        assert psi_involution(t) == t

    def test_bars_coefficients(self):
        sp = a1_pair(1, 1)
        t = sp.unit(lab((0, 0), (0, 0))).scale(vp(1))
        assert psi_involution(t) == sp.unit(lab((0, 0), (0, 0))).scale(vp(-1))

    def test_squared_is_identity(self):
        spaces = [
            a1_pair(2, 2),
            TensorSpace((ModuleRef.simple_hw(A1, (2,), 2),
                         ModuleRef.simple_hw(A1, (2,), 2))),
            TensorSpace((ModuleRef.simple_lw(A1, (2,), 2),
                         ModuleRef.simple_lw(A1, (2,), 2))),
            TensorSpace((ModuleRef.verma(A1, (1,), 3),
                         ModuleRef.simple_hw(A1, (2,), 2))),
            lwhw(A2, (1, 0), (0, 1), 2, 2),
        ]
        for sp in spaces:
            for labels in sp.component(sp.weight_of(
                    ((sp._levels[0][-1], 0), (sp._levels[1][0], 0)))):
                t = sp.unit(labels)
                assert psi_involution(psi_involution(t)) == t

    def test_squared_on_mixed_vector(self):
        sp = a1_pair(2, 2)
        t = sp.unit(lab((2, 0), (2, 0))) \
            + sp.unit(lab((1, 0), (1, 0))).scale(vp(3))
        assert psi_involution(psi_involution(t)) == t

    def test_intertwines_generators(self):
        # Psi(u t) = bar(u) Psi(t): F, E fixed, K_mu goes to K_{-mu}
        cases = [
            (a1_pair(2, 2), lab((1, 0), (1, 0)), "1"),
            (lwhw(A2, (1, 0), (0, 1), 2, 2),
             lab(((1, 0), 0), ((0, 1), 0)), "2"),
        ]
        for sp, labels, i in cases:
            t = sp.unit(labels)
            pt = psi_involution(t)
            for gen in ("F", "E"):
                assert psi_involution(act((gen, i), t)) == act((gen, i), pt)
            mu = sp.datum.embedY[i]
            neg = tuple(-a for a in mu)
            assert psi_involution(act(("K", mu), t)) == act(("K", neg), pt)


def closed_form(m, n, k, l):
    """Rank one diamond coefficients in the divided power basis."""
    out = {}
    for s in range(min(k, l) + 1):
        if k - l <= m - n:
            c = vp(s * (k - m - s)) * RationalFn(
                quantum_factorial(n - l + s),
                quantum_factorial(s) * quantum_factorial(n - l))
        else:
            c = vp(s * (l - n - s)) * RationalFn(
                quantum_factorial(m - k + s),
                quantum_factorial(s) * quantum_factorial(m - k))
        out[lab((k - s, 0), (l - s, 0))] = c
    return out


class TestDiamond:

    def test_extreme_is_pure(self):
        sp = a1_pair(1, 1)
        d = diamond(sp, lab((0, 0), (0, 0)))
        assert d.vector == sp.unit(lab((0, 0), (0, 0)))

    def test_rank1_example(self):
        sp = a1_pair(1, 1)
        d = diamond(sp, lab((1, 0), (1, 0)))
        assert d.vector.terms == {
            lab((1, 0), (1, 0)): R_ONE,
            lab((0, 0), (0, 0)): vp(-1),
        }
        assert d.coefficient(lab((0, 0), (0, 0))) == vp(-1)

    def test_second_factor_highest_is_pure(self):
        sp = lwhw(A2, (1, 1), (1, 0), 3, 2)
        for g in ((0, 0), (1, 0), (1, 1)):
            labels = ((g, 0), ((0, 0), 0))
            d = diamond(sp, labels)
            assert d.vector == sp.unit(labels)

    def test_rank1_closed_form(self):
        for m, n in ((2, 2), (3, 2), (2, 3)):
            sp = a1_pair(m, n)
            for k in range(m + 1):
                for l in range(n + 1):
                    d = diamond(sp, lab((k, 0), (l, 0)))
                    assert d.vector.terms == closed_form(m, n, k, l), \
                        (m, n, k, l)

    def test_coefficient_lattice(self):
        sp = lwhw(A2, (1, 0), (0, 1), 2, 2)
        for labels in sp.component(sp.datum.weight((0, 0))):
            d = diamond(sp, labels)
            for l2, c in d.vector.terms.items():
                if l2 == d.labels:
                    continue
                assert lattice_test(c, "in_Nvinv")

    def test_lwlw_mirrors_hwhw(self):
        hw = TensorSpace((ModuleRef.simple_hw(A1, (2,), 2),
                          ModuleRef.simple_hw(A1, (2,), 2)))
        lw = TensorSpace((ModuleRef.simple_lw(A1, (2,), 2),
                          ModuleRef.simple_lw(A1, (2,), 2)))
        for a in range(3):
            for b in range(3):
                dl = diamond(lw, lab((a, 0), (b, 0)))
                dh = diamond(hw, lab((b, 0), (a, 0)))
                swapped = {(l1, l2): c
                           for (l2, l1), c in dh.vector.terms.items()}
                assert dl.vector.terms == swapped, (a, b)

    def test_lwlw_mirrors_hwhw_rank2(self):
        hw = TensorSpace((ModuleRef.simple_hw(A2, (0, 1), 2),
                          ModuleRef.simple_hw(A2, (1, 0), 2)))
        lw = TensorSpace((ModuleRef.simple_lw(A2, (1, 0), 2),
                          ModuleRef.simple_lw(A2, (0, 1), 2)))
        labels = (((1, 0), 0), ((0, 1), 0))
        dl = diamond(lw, labels)
        dh = diamond(hw, (labels[1], labels[0]))
        swapped = {(l1, l2): c for (l2, l1), c in dh.vector.terms.items()}
        assert dl.vector.terms == swapped

    def test_verma_mirrors_lwhw(self):
        # quotient map sends Verma depth k to the extreme line m - k
        m, n = 4, 2
        vsp = TensorSpace((ModuleRef.verma(A1, (m,), m),
                           ModuleRef.simple_hw(A1, (n,), n)))
        lsp = a1_pair(m, n)
        for k in range(3):
            for l in range(n + 1):
                dv = diamond(vsp, lab((k, 0), (l, 0)))
                dl = diamond(lsp, lab((m - k, 0), (l, 0)))
                mapped = {}
                for (lab1, lab2), c in dv.vector.terms.items():
                    mapped[((m - lab1[0][0],), lab1[1]), lab2] = c
                assert mapped == dl.vector.terms, (k, l)

    def test_demazure_closure(self):
        dem = ModuleRef.demazure_hw(A2, ("1", "2"), (1, 1), 4)
        allowed = set()
        for mv in module_cb(dem):
            (slot, c), = mv.support()
            assert c == R_ONE
            allowed.add((mv.nu, slot))
        sp = lwhw(A2, (1, 0), (1, 1), 2, 4)
        for l2 in sorted(allowed):
            for g1 in ((0, 0), (1, 0), (1, 1)):
                d = diamond(sp, ((g1, 0), l2))
                for (_, lb2) in d.vector.terms:
                    assert lb2 in allowed

    def test_unsupported_variant(self):
        sp = TensorSpace((ModuleRef.simple_hw(A1, (1,), 1),
                          ModuleRef.simple_lw(A1, (1,), 1)))
        with pytest.raises(TensorError, match="unsupported variant"):
            diamond(sp, lab((0, 0), (0, 0)))

    def test_component_depth_guard(self):
        sp = TensorSpace((ModuleRef.verma(A1, (0,), 1),
                          ModuleRef.simple_hw(A1, (3,), 3)))
        with pytest.raises(TensorError, match="degree bound"):
            diamond(sp, lab((1, 0), (3, 0)))


class TestNfold:

    def test_extremes_pure(self):
        sp = TensorSpace((ModuleRef.simple_lw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1)))
        labels = lab((0, 0), (0, 0), (0, 0))
        d = nfold_diamond(sp, labels)
        assert d.vector == sp.unit(labels)

    def test_triple_both_bracketings(self):
        sp = TensorSpace((ModuleRef.simple_lw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1)))
        for k in range(2):
            for l1 in range(2):
                for l2 in range(2):
                    labels = lab((k, 0), (l1, 0), (l2, 0))
                    d = nfold_diamond(sp, labels, check_bracketing=True)
                    assert d.coefficient(labels) == R_ONE
                    assert psi_involution(d.vector) == d.vector
                    assert _psi_right(d.vector) == d.vector

    def test_fourfold(self):
        sp = TensorSpace((ModuleRef.simple_lw(A1, (1,), 1),
                          ModuleRef.simple_lw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1)))
        labels = lab((1, 0), (0, 0), (0, 0), (1, 0))
        d = nfold_diamond(sp, labels, check_bracketing=True)
        assert d.coefficient(labels) == R_ONE

    def test_shape_gate(self):
        sp = TensorSpace((ModuleRef.simple_hw(A1, (1,), 1),
                          ModuleRef.simple_lw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1)))
        with pytest.raises(TensorError, match="lowest weight then highest"):
            nfold_diamond(sp, lab((0, 0), (0, 0), (0, 0)))


class TestTransition:

    def test_rank1_middle_component(self):
        sp = a1_pair(1, 1)
        labels, entries = transition_matrix(sp, (0,))
        assert labels == (lab((0, 0), (0, 0)), lab((1, 0), (1, 0)))
        assert entries == [[R_ONE, R_ZERO], [vp(-1), R_ONE]]

    def test_extreme_component(self):
        sp = a1_pair(1, 1)
        labels, entries = transition_matrix(sp, (2,))
        assert labels == (lab((1, 0), (0, 0)),)
        assert entries == [[R_ONE]]

    def test_unitriangular_positive(self):
        sp = a1_pair(2, 2)
        for wt in range(-4, 5, 2):
            labels, entries = transition_matrix(sp, (wt,))
            for r in range(len(labels)):
                assert entries[r][r] == R_ONE
                for c in range(len(labels)):
                    if c > r:
                        assert entries[r][c] == R_ZERO
                    elif c < r and entries[r][c]:
                        assert lattice_test(entries[r][c], "in_Nvinv")


class TestChi:

    def test_swaps_extremes(self):
        sp = lwhw(A1, (1,), (2,), 1, 2)
        t = sp.unit(lab((0, 0), (0, 0)))
        out = chi_twist(t)
        assert out.space.factors[0].lam.coords == (2,)
        assert out.space.factors[1].lam.coords == (1,)
        assert out.terms == {lab((0, 0), (0, 0)): R_ONE}

    def test_involutive(self):
        sp = lwhw(A1, (1,), (2,), 1, 2)
        t = sp.unit(lab((1, 0), (2, 0))).scale(vp(2)) \
            + sp.unit(lab((0, 0), (1, 0)))
        back = chi_twist(chi_twist(t))
        assert back.space == sp and back.terms == t.terms

    def test_based(self):
        sp = lwhw(A1, (1,), (2,), 1, 2)
        target = lwhw(A1, (2,), (1,), 2, 1)
        for k in range(2):
            for l in range(3):
                d = diamond(sp, lab((k, 0), (l, 0)))
                out = chi_twist(d.vector, target)
                assert out == diamond(target, lab((l, 0), (k, 0))).vector

    def test_fixes_symmetric_diamond(self):
        sp = a1_pair(1, 1)
        d = diamond(sp, lab((1, 0), (1, 0)))
        assert chi_twist(d.vector).terms == d.vector.terms

    def test_requires_lwhw(self):
        sp = TensorSpace((ModuleRef.simple_hw(A1, (1,), 1),
                          ModuleRef.simple_hw(A1, (1,), 1)))
        with pytest.raises(TensorError):
            chi_twist(sp.unit(lab((0, 0), (0, 0))))


class TestEpsilon:

    def setup_method(self):
        self.sp = TensorSpace((ModuleRef.verma(A1, (2,), 3),
                               ModuleRef.simple_hw(A1, (2,), 2)))

    def test_kills_generator(self):
        t = self.sp.unit(lab((0, 0), (0, 0)))
        assert epsilon_op("1", t).is_zero()

    def test_theta_line(self):
        # epsilon(theta_i ox eta) = v^{-<i, lam>} (1 ox eta)
        t = self.sp.unit(lab((1, 0), (0, 0)))
        out = epsilon_op("1", t)
        assert out == self.sp.unit(lab((0, 0), (0, 0))).scale(vp(-2))

    def test_commutation_with_f(self):
        # epsilon_i F_i = v^{i.i} F_i epsilon_i + id
        for labels in (lab((0, 0), (0, 0)), lab((1, 0), (0, 0)),
                       lab((0, 0), (1, 0)), lab((1, 0), (1, 0))):
            t = self.sp.unit(labels)
            lhs = epsilon_op("1", act(("F", "1"), t))
            rhs = act(("F", "1"), epsilon_op("1", t)).scale(vp(2)) + t
            assert lhs == rhs, labels

    def test_adjoint_to_f(self):
        # (F t1, t2) = (1 - v^-2)^{-1} (t1, epsilon t2)
        const = RationalFn(ONE, LaurentPoly({0: 1, -2: -1}))
        for a in range(2):
            for b in range(2):
                t1 = self.sp.unit(lab((a, 0), (b, 0)))
                for c in range(3):
                    d = a + b + 1 - c
                    if not 0 <= d <= 2:
                        continue
                    t2 = self.sp.unit(lab((c, 0), (d, 0)))
                    lhs = tensor_inner_product(act(("F", "1"), t1), t2)
                    rhs = const * tensor_inner_product(t1, epsilon_op("1", t2))
                    assert lhs == rhs, (a, b, c, d)

    def test_requires_verma_hw(self):
        sp = a1_pair(1, 1)
        with pytest.raises(TensorError):
            epsilon_op("1", sp.unit(lab((0, 0), (0, 0))))
