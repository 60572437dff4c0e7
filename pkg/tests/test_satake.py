import random
from fractions import Fraction as F

import pytest

from autoloc import symfunc as sf
from autoloc.errors import InputError
from autoloc.satake import (PlaceType, QHalfValue, SatakeData, bc_local, hecke_eigenvalue,
                            modulus_half, q_sqrt_power, sbc_local_split, verify_theta_bc)


def test_satake_data_invariants():
    SatakeData(3, 5, (1, 2, 3))  # fine
    SatakeData(3, 5, (1,), 2)    # ramified
    with pytest.raises(InputError):
        SatakeData(3, 5, (1, 2, 3), 1)   # full rank but positive conductor
    with pytest.raises(InputError):
        SatakeData(3, 5, (1, 2), 0)      # deficient rank but conductor 0
    with pytest.raises(InputError):
        SatakeData(2, 5, (0, 1))         # zero inverse root
    with pytest.raises(InputError):
        SatakeData(2, 6, (1, 2))         # 6 is not a prime power
    with pytest.raises(InputError):
        SatakeData(2, 5, (1, 2, 3))      # too many roots


def test_modulus_half_examples():
    assert modulus_half(3, 5, (1, 0, 0)) == QHalfValue.of(5, F(1, 5))   # u^2 = 1/q
    assert modulus_half(3, 5, (1, 1, 1)) == QHalfValue.one(5)           # weights 2,0,-2
    assert modulus_half(2, 5, (1, 0)) == QHalfValue.of(5, 1, 1)         # a genuine half power


def test_qhalf_canonical_form():
    u = QHalfValue.of(5, 1, 1)
    assert (u * u) == QHalfValue.of(5, F(1, 5))
    assert QHalfValue.of(5, 1, -1) == QHalfValue.of(5, 5, 1)  # sqrt(q) = q * u
    assert QHalfValue.of(5, 0, 3).half_power == 0
    # over a square cardinality u itself is rational
    assert QHalfValue.of(25, 1, 1) == QHalfValue.of(25, F(1, 5))
    with pytest.raises(InputError):
        u + QHalfValue.one(5)
    assert (u + QHalfValue.zero(5)) == u
    with pytest.raises(InputError):
        u.as_rational()
    assert QHalfValue.of(5, F(3), 2).as_rational() == F(3, 5)


def test_qhalf_ring_laws_random():
    rng = random.Random(3)
    for _ in range(150):
        q = rng.choice((2, 3, 5, 7))
        parity = rng.randint(0, 1)

        def rand():
            return QHalfValue.of(q, F(rng.randint(-5, 5), rng.randint(1, 5)),
                                 2 * rng.randint(-2, 2) + parity)

        a, b, c = rand(), rand(), rand()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)


def test_hecke_eigenvalue_examples():
    sd = SatakeData(3, 5, (1, 2, 3))
    assert hecke_eigenvalue(sd, 1) == QHalfValue.of(5, 30)       # 5 * sigma_1
    assert hecke_eigenvalue(sd, 3) == QHalfValue.of(5, 6)        # q^0 sigma_3
    sd2 = SatakeData(2, 5, (2, 3))
    # q^{1/2} sigma_1 = 5 sqrt(5): coefficient 25 at half power 1 (25 u = 5 sqrt 5)
    assert hecke_eigenvalue(sd2, 1) == QHalfValue.of(5, 5, -1)
    assert hecke_eigenvalue(sd2, 1) == q_sqrt_power(5, 1) * 5
    with pytest.raises(InputError):
        hecke_eigenvalue(SatakeData(2, 5, (2,), 1), 1)


def test_bc_local_cases():
    sd = SatakeData(2, 5, (2, 3))
    up = bc_local(sd, PlaceType.INERT)
    assert up.q == 25 and up.alphas == (F(4), F(9))
    assert bc_local(sd, PlaceType.SPLIT) == (sd, sd)
    sd3 = SatakeData(3, 3, (1, 1, 1))
    assert bc_local(sd3, PlaceType.RAMIFIED) == sd3
    with pytest.raises(InputError):
        bc_local(SatakeData(2, 5, (2,), 1), PlaceType.INERT)


def test_sbc_local_split():
    assert sbc_local_split(SatakeData(1, 5, (2,)))[1].alphas == (F(1, 2),)
    second = sbc_local_split(SatakeData(3, 5, (2, 3, 5)))[1]
    assert second.alphas == (F(1, 2), F(1, 3), F(1, 5))
    sd = SatakeData(2, 5, (1, 1))
    assert sbc_local_split(sd) == (sd, sd)


def test_dual_is_involutive():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(1, 4)
        sd = SatakeData(n, 7, tuple(F(rng.randint(1, 9), rng.randint(1, 9))
                                    for _ in range(n)))
        assert sd.dual().dual() == sd


def test_theta_bc_examples():
    rep = verify_theta_bc(2, 1, SatakeData(2, 5, (2, 3)), 5)
    assert rep.equal and rep.lhs.coefficient == 65  # q_w^{1/2} sigma_1(alpha^2) = 5 * 13
    rep33 = verify_theta_bc(3, 3, SatakeData(3, 5, (1, 2, 3)), 5)
    assert rep33.equal and rep33.lhs.coefficient == 36  # sigma_3(alpha)^2
    rep1 = verify_theta_bc(1, 1, SatakeData(1, 7, (F(3, 2),)), 7)
    assert rep1.equal  # degenerates to alpha^2 = alpha * alpha


def test_theta_bc_randomized():
    rng = random.Random(77)
    for _ in range(120):
        n = rng.choice((2, 3, 4, 5))
        q = rng.choice((2, 3, 5, 7, 11, 13))
        alphas = tuple(F(rng.randint(-9, 9) or 1, rng.randint(1, 9)) for _ in range(n))
        sd = SatakeData(n, q, alphas)
        for i in range(1, n + 1):
            assert verify_theta_bc(n, i, sd, q).equal


def test_theta_sbc_generator_eigenvalues():
    # the dual component of the split SBC pair carries the dual-operator
    # eigenvalues sigma_i(1/alpha) = sigma_{n-i}(alpha)/sigma_n(alpha)
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(1, 4)
        sd = SatakeData(n, 7, tuple(F(rng.randint(1, 9), rng.randint(1, 9))
                                    for _ in range(n)))
        dual = sbc_local_split(sd)[1]
        sigma_n = sf.elementary(n, sd.alphas)
        for i in range(1, n + 1):
            lhs = hecke_eigenvalue(dual, i)
            assert lhs == q_sqrt_power(7, i * (n - i)) * (sf.elementary(n - i, sd.alphas) / sigma_n)
