from fractions import Fraction as F
import random

import pytest

from lefschetz_lab import sl2
from lefschetz_lab.exterior import Form, Frame, SymplecticStructure, wedge
from lefschetz_lab.identities import random_element
from lefschetz_lab.models import get_model


def symplectic(n, p=0):
    fr = Frame(p, n)
    omega = Form(fr, 2, {(p + 2 * i, p + 2 * i + 1): 1 for i in range(n)})
    return SymplecticStructure(fr, omega)


S1 = symplectic(1)
KT = get_model("kt_product").model.symp


def one(s):
    return Form(s.frame, 0, {(): 1})


class TestOperators:
    def test_L_examples(self):
        assert sl2.L(S1, one(S1)) == S1.omega
        assert not sl2.L(S1, S1.omega)
        v_ = S1.frame.covector(0)
        assert sl2.L(S1, v_) == wedge(S1.omega, v_)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_Lambda_of_omega_is_n(self, n):
        s = symplectic(n)
        assert sl2.Lambda(s, s.omega) == n * one(s)

    def test_Lambda_kills_one_forms(self):
        for i in range(2):
            assert not sl2.Lambda(KT, KT.frame.covector(1 + i))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_commutator_on_one(self, n):
        s = symplectic(n)
        lhs = sl2.Lambda(s, sl2.L(s, one(s))) - sl2.L(s, sl2.Lambda(s, one(s)))
        assert lhs == n * one(s)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_A_values(self, n):
        s = symplectic(n)
        assert sl2.A(s, one(s)) == n * one(s)
        assert sl2.A(s, s.nu) == -n * s.nu
        middle = Form(s.frame, n, {tuple(range(n)): 1})
        assert not sl2.A(s, middle)


class TestLefschetzPower:
    def test_r0_identity(self):
        op = sl2.lefschetz_power_matrix(KT, 0)
        assert op.matrix == tuple(tuple(F(int(i == j)) for j in range(6)) for i in range(6))

    def test_n1_r1(self):
        op = sl2.lefschetz_power_matrix(S1, 1)
        assert op.matrix == ((F(1),),)

    def test_kt_r1_bijective(self):
        op = sl2.lefschetz_power_matrix(KT, 1)
        assert op.shape == (4, 4) and op.rank == 4

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_powers_invertible(self, n):
        s = symplectic(n)
        for r in range(n + 1):
            assert sl2.lefschetz_power_matrix(s, r).is_invertible()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            sl2.lefschetz_power_matrix(S1, 2)


class TestPrimitive:
    def test_one_form(self):
        a = S1.frame.covector(0) + 2 * S1.frame.covector(1)
        dec = sl2.primitive_decompose(S1, a)
        assert dec.components == ((0, a),)

    def test_omega(self):
        dec = sl2.primitive_decompose(S1, S1.omega)
        assert dec.components == ((1, one(S1)),)

    def test_kt_example(self):
        phi = wedge(KT.frame.covector(1), KT.frame.covector(3))
        dec = dict(sl2.primitive_decompose(KT, phi).components)
        assert dec[0] == phi - F(1, 2) * KT.omega
        assert dec[1] == F(1, 2) * one(KT)
        assert not sl2.Lambda(KT, dec[0])

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_primitive_dims(self, n):
        from math import comb
        s = symplectic(n)
        for k in range(n + 1):
            expected = comb(2 * n, k) - (comb(2 * n, k - 2) if k >= 2 else 0)
            assert len(sl2.primitive_basis(s, k)) == expected
        for k in range(n + 1, 2 * n + 1):
            assert sl2.primitive_basis(s, k) == []

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_roundtrip_random(self, n):
        s = symplectic(n)
        rng = random.Random(n)
        for r in range(2 * n + 1):
            for _ in range(10):
                phi = random_element(Form, s.frame, s.frame.transverse_keys(r), r, rng)
                dec = sl2.primitive_decompose(s, phi)
                assert dec.reconstruct(s) == phi
                assert all(sl2.is_primitive(s, b) for _, b in dec.components)
