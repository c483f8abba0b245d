from fractions import Fraction as F

import pytest

from lefschetz_lab.exterior import Form, Frame
from lefschetz_lab.foliated import (BasicClosureError, LieModel, NotIsoparametricError, Operators,
                                    basic_basis, ce_differential, lie_derivative, mean_curvature,
                                    operator_matrix, validate_model)
from lefschetz_lab.models import CATALOG_NAMES, get_model

from fixtures_models import non_isoparametric
from helpers import by_labels


def model(name):
    return get_model(name).model


HEIS, SOL, KT, AB = (model(n) for n in ("heisenberg_contact", "sol_hyperbolic", "kt_product",
                                         "abelian_cosymplectic"))


class TestValidate:
    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_catalog_valid_and_unimodular(self, name):
        rep = validate_model(model(name))
        assert rep.ok, rep.failures()
        assert rep.unimodular

    def test_foliation_in_kernel_required(self):
        fr = Frame(1, 1)
        m = LieModel("bad", fr, {}, Form(fr, 2, {(0, 1): 1}))
        rep = validate_model(m)
        assert not rep.ok
        assert [c.name for c in rep.failures()][0] == "kernel_contains_foliation"

    def test_jacobi_failure_names_triple(self):
        fr = Frame(1, 1)
        m = LieModel("bad", fr, {(0, 1): {1: 1}, (1, 2): {1: 1}, (0, 2): {2: 1}}, Form(fr, 2, {(1, 2): 1}))
        rep = validate_model(m)
        jac = next(c for c in rep.checks if c.name == "jacobi")
        assert not jac.passed and "(1,2,3)" in jac.detail

    def test_non_integrable_foliation(self):
        fr = Frame(2, 1)
        m = LieModel("bad", fr, {(0, 1): {2: 1}}, Form(fr, 2, {(2, 3): 1}))
        rep = validate_model(m)
        assert "foliation_integrable" in [c.name for c in rep.failures()]

    def test_not_unimodular(self):
        fr = Frame(1, 1)
        m = LieModel("ax+b", fr, {(0, 1): {1: 1}}, Form(fr, 2, {(1, 2): 1}))
        assert not validate_model(m).unimodular


class TestDifferential:
    def test_heisenberg(self):
        assert ce_differential(HEIS, by_labels(HEIS, {("e3",): 1})) == by_labels(HEIS, {("e1", "e2"): -1})

    def test_abelian_vanishes(self):
        for r in range(4):
            for key in AB.frame.keys(r):
                assert not ce_differential(AB, Form(AB.frame, r, {key: 1}))

    def test_sol(self):
        assert ce_differential(SOL, by_labels(SOL, {("e3",): 1})) == by_labels(SOL, {("e1", "e3"): 1})

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_square_zero(self, name):
        m = model(name)
        for r in range(m.frame.m):
            for key in m.frame.keys(r):
                assert not ce_differential(m, ce_differential(m, Form(m.frame, r, {key: 1})))

    def test_cartan_formula_matches_bracket_on_one_forms(self):
        # theta(X) a = -a([X, .]) for invariant 1-forms
        m = SOL
        for i in range(3):
            X = m.frame.vector(i)
            for k in range(3):
                a = m.frame.covector(k)
                got = lie_derivative(m, X, a)
                expect = Form(m.frame, 1, {(j,): -m.bracket(i, j).get(k, 0) for j in range(3)})
                assert got == expect


class TestBasic:
    def test_heisenberg(self):
        bc = basic_basis(HEIS)
        assert bc.dims == [1, 2, 1]
        span = {f.label(k) for f in bc.basis(1) for k in f.coeffs}
        assert span == {"e1*", "e2*"}

    def test_sol(self):
        bc = basic_basis(SOL)
        assert bc.dims == [1, 2, 1]
        assert {f.label(k) for f in bc.basis(1) for k in f.coeffs} == {"e1*", "e3*"}

    def test_kt_full(self):
        assert basic_basis(KT).dims == [1, 4, 6, 4, 1]

    def test_coords_roundtrip_and_rejection(self):
        bc = basic_basis(SOL)
        phi = by_labels(SOL, {("e1",): 2, ("e3",): -1})
        assert bc.from_coords(1, bc.coords(phi)) == phi
        with pytest.raises(BasicClosureError):
            bc.coords(by_labels(SOL, {("e2",): 1}))
        assert bc.try_coords(by_labels(SOL, {("e2",): 1})) is None


class TestMeanCurvature:
    def test_heisenberg(self):
        mc = mean_curvature(HEIS)
        assert not mc.kappa
        assert mc.phi0 == by_labels(HEIS, {("e1", "e2"): -1}) == HEIS.omega

    def test_abelian(self):
        mc = mean_curvature(AB)
        assert not mc.kappa and not mc.phi0

    def test_sol(self):
        mc = mean_curvature(SOL)
        assert mc.kappa == by_labels(SOL, {("e1",): 1})
        assert mc.is_basic_kappa and mc.d_kappa_zero
        assert not mc.phi0

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_rummler(self, name):
        assert mean_curvature(model(name)).rummler_holds

    def test_non_isoparametric(self):
        mc = mean_curvature(non_isoparametric())
        assert not mc.is_basic_kappa


class TestOperatorMatrix:
    def test_sol_dkappa_degree0(self):
        ops = Operators(SOL)
        op = ops.matrix("dKappa", 0)
        img = ops.complex.from_coords(1, [row[0] for row in op.matrix])
        assert img == by_labels(SOL, {("e1",): F(-1, 2)})

    def test_sol_dkappa_degree1(self):
        ops = Operators(SOL)
        assert ops.d_kappa(by_labels(SOL, {("e1",): 1})) == Form.zero(SOL.frame, 2)
        assert ops.d_kappa(by_labels(SOL, {("e3",): 1})) == by_labels(SOL, {("e1", "e3"): F(1, 2)})
        op = ops.matrix("dKappa", 1)
        assert op.shape == (1, 2) and op.rank == 1

    def test_heisenberg_delta_T_zero(self):
        ops = Operators(HEIS)
        for r in range(3):
            assert ops.matrix("deltaT", r).is_zero()

    def test_degree_range(self):
        ops = Operators(SOL)
        with pytest.raises(ValueError):
            ops.matrix("dB", 3)
        with pytest.raises(ValueError):
            ops.matrix("bogus", 0)

    def test_non_isoparametric_is_error(self):
        ops = Operators(non_isoparametric())
        ops.matrix("dB", 0)
        with pytest.raises(NotIsoparametricError):
            ops.matrix("dKappa", 0)
        with pytest.raises(NotIsoparametricError):
            operator_matrix(ops.complex, ops.mc, "deltaB", 1)

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_matrix_identities_every_degree(self, name):
        m = model(name)
        ops = Operators(m)
        n2 = 2 * m.n
        M = ops.matrix

        def comp(a, r, b):
            """a after b, starting in degree r; None when out of range."""
            from lefschetz_lab.foliated import KIND_SHIFT
            mid = r + KIND_SHIFT[b]
            if not 0 <= mid <= n2:
                return None
            return M(a, mid) @ M(b, r)

        for r in range(n2 + 1):
            # [d_B, Lambda] = delta_T
            parts = [comp("dB", r, "Lambda"), comp("Lambda", r, "dB")]
            if r >= 1:
                target = M("deltaT", r)
                total = target.scaled(0)
                if parts[0] is not None:
                    total = total + parts[0]
                if parts[1] is not None:
                    total = total - parts[1]
                assert total.matrix == target.matrix
            # d_kappa^2 = 0 and delta_kappa^2 = 0
            if r + 2 <= n2:
                assert comp("dKappa", r, "dKappa").is_zero()
            if r >= 2:
                assert comp("deltaKappa", r, "deltaKappa").is_zero()
            # Delta_kappa = 0
            total = None
            for a, b in (("dKappa", "deltaKappa"), ("deltaKappa", "dKappa")):
                c = comp(a, r, b)
                if c is not None:
                    total = c if total is None else total + c
            assert total is None or total.is_zero()
            # Delta_B = -theta(kappa^sharp)
            total = M("thetaKappaSharp", r)
            for a, b in (("dB", "deltaB"), ("deltaB", "dB")):
                c = comp(a, r, b)
                if c is not None:
                    total = total + c
            assert total.is_zero()
