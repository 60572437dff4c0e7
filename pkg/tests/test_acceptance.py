"""Acceptance suite: one test per criterion, each printing a verdict line.

Every check is exact (zero tolerance): series identities are compared
coefficientwise as rationals, eigenvalue identities in the exact
half-power ring, lattice exponents as integers.  Seeds are fixed so the
runs are reproducible.

Criterion 7's p-smallness clause asserts perfectness of the kernel pairing
whenever p > max(n+, n-), and FAILS: that bound is too weak, with first
counterexample the sl3 trace form at (n+, n-) = (1, 1), p = 3 (Gram
determinant -3).  Perfectness holds on the tested range exactly when
p >= n+ + n- + 2, the Polo-Tilouine bound.  The failing test states the
refuted claim verbatim on purpose; the remaining clauses of criterion 7
live in their own test and pass.
"""

import random
from fractions import Fraction as F

from autoloc import repmodels, satake, whittaker
from autoloc.suites import CheckConfig, SUITES, run_suite


def _verdict(criterion, description, ok, detail=""):
    line = "ACCEPTANCE %s (%s): %s" % (criterion, description, "PASS" if ok else "FAIL")
    if detail and not ok:
        line += "  [%s]" % detail
    print(line)
    return ok


def _run(name, **overrides):
    cfg = CheckConfig(suite=name, **overrides)
    return run_suite(cfg)


def test_criterion_1_essential_vector_pairing():
    rng = random.Random(20260)
    fails = []
    for idx in range(200):
        n = rng.choice((2, 3, 4))
        r = rng.randint(0, n - 1)
        q = rng.choice((2, 3, 5, 7, 11, 13))
        c = rng.randint(1, 3)
        mk = lambda: tuple(F(rng.randint(-9, 9) or 1, rng.randint(1, 9)) for _ in range(r))
        sd = satake.SatakeData(n, q, mk(), c)
        sd_dual = satake.SatakeData(n, q, mk(), c)
        lhs = whittaker.pairing_series(sd, sd_dual, 12)
        rhs = whittaker.rankin_selberg_series(sd, sd_dual, 12)
        if lhs.coefficients != rhs.coefficients:
            fails.append(idx)
    ok = _verdict("criterion-1", "pairing series = imprimitive RS series, 200 ramified pairs",
                  not fails, "instances %r" % fails[:5])
    assert ok


def test_criterion_2_transposed_pairing_dichotomy():
    rng = random.Random(20261)
    fails = []
    for idx in range(200):
        n = rng.choice((2, 3, 4))
        r = rng.randint(0, n - 1)
        q = rng.choice((2, 3, 5, 7))
        c = rng.randint(1, 3)
        mk = lambda: tuple(F(rng.randint(-9, 9) or 2, rng.randint(1, 9)) for _ in range(r))
        sd = satake.SatakeData(n, q, mk(), c)
        sd_dual = satake.SatakeData(n, q, mk(), c)
        series = whittaker.transposed_pairing_series(sd, sd_dual, 12)
        if r == n - 1:
            want = whittaker.rankin_selberg_series(sd, sd_dual, 12)
            good = series.coefficients == want.coefficients
        else:
            good = series.is_zero()
        if not good:
            fails.append(idx)
    ok = _verdict("criterion-2", "transposed pairing: L^imp iff r = n-1, zero iff r < n-1",
                  not fails, "instances %r" % fails[:5])
    assert ok


def test_criterion_3_macdonald_identities():
    report = _run("macdonald", seed=20262)
    bad = [r.name for r in report.records if r.verdict == "fail"]
    ok = _verdict("criterion-3", "Cauchy and even-Littlewood sums = product sides, degree 12",
                  not bad, ", ".join(bad[:4]))
    assert ok


def test_criterion_4_theta_bc_transfer():
    rng = random.Random(20263)
    fails = 0
    for idx in range(500):
        n = rng.choice((2, 3, 4, 5))
        q = rng.choice((2, 3, 5, 7, 11, 13))
        alphas = tuple(F(rng.randint(-9, 9) or 1, rng.randint(1, 9)) for _ in range(n))
        sd = satake.SatakeData(n, q, alphas)
        for i in range(1, n + 1):
            if not satake.verify_theta_bc(n, i, sd, q).equal:
                fails += 1
    report = _run("theta-bc", seed=20263, instances=1)
    identity_bad = [r.name for r in report.records
                    if r.name.startswith("sigma-square-identity") and r.verdict == "fail"]
    ok = _verdict("criterion-4",
                  "theta_BC eigenvalue transfer on 500 instances + sigma_i(X^2) identity",
                  fails == 0 and not identity_bad,
                  "%d eigenvalue fails; %s" % (fails, identity_bad[:3]))
    assert ok


def test_criterion_5_asai_coherence():
    zeta = _run("asai-zeta", seed=20264)
    fact = _run("lfactors", seed=20264)
    bad = [r.name for r in zeta.records + fact.records if r.verdict == "fail"]
    ok = _verdict("criterion-5",
                  "Asai zeta = ramified product; As+ As- = RS(T^2); 1.2.4 quotients exact",
                  not bad, ", ".join(bad[:4]))
    assert ok


def test_criterion_6_congruence_calculus():
    cong = _run("congruence", seed=20265, instances=100)
    lemmas = _run("pairing-lemma", seed=20265, instances=100)
    bad = [r.name for r in cong.records + lemmas.records if r.verdict == "fail"]
    chain = next(r for r in cong.records if r.name.startswith("chain-example"))
    ok = _verdict("criterion-6",
                  "rel_mult additivity, worked (2,0,2) example, criterion iff, both lemmas",
                  not bad and chain.verdict == "pass", ", ".join(bad[:4]))
    assert ok


def test_criterion_7_representation_models():
    dim_ok = all(
        repmodels.kernel_dimension(repmodels.WeightTriple(a, b, 0))
        == repmodels.WeightTriple(a, b, 0).kernel_dimension()
        for a in range(7) for b in range(7))
    rng = random.Random(20266)
    w = repmodels.WeightTriple(2, 2, 1)
    basis = repmodels.kernel_basis(w)
    dual_basis = repmodels.kernel_basis(w.dual())
    small = repmodels.WeightTriple(2, 1, 1)
    sample = repmodels.BiHomPolynomial(
        small, {((1, 1, 0), (0, 1, 0)): F(2), ((2, 0, 0), (1, 0, 0)): F(-3),
                ((0, 1, 1), (0, 0, 1)): F(5, 7)})
    equi_ok = True
    for _ in range(50):
        while True:
            g = [[F(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
            from autoloc import linalg
            if linalg.det(g) != 0:
                break
        p = basis[rng.randrange(len(basis))]
        q = dual_basis[rng.randrange(len(dual_basis))]
        equi_ok = equi_ok and repmodels.pair(repmodels.act(g, p), repmodels.act(g, q)) == \
            repmodels.pair(p, q)
        equi_ok = equi_ok and repmodels.contraction(repmodels.act(g, sample)) == \
            repmodels.act(g, repmodels.contraction(sample))
    const_ok = True
    w0mat = ((0, 0, -1), (0, 1, 0), (-1, 0, 0))
    epsmat = ((0, 0, F(-1, 2)), (0, -1, 0), (F(-1, 2), 0, 0))
    for n in range(5):
        for v in range(-2, 3):
            wt = repmodels.WeightTriple(n, n, v)
            hw = repmodels.BiHomPolynomial.highest_weight_vector(wt)
            hw_dual = repmodels.BiHomPolynomial.highest_weight_vector(wt.dual())
            const_ok = const_ok and \
                repmodels.pair(hw, repmodels.act(w0mat, hw_dual, "dual")) == F(-1) ** (2 * n + v)
            const_ok = const_ok and \
                repmodels.pair(hw, repmodels.act(epsmat, hw_dual, "standard")) == F(4) ** v
    ok = _verdict("criterion-7",
                  "kernel dimensions (n<=6), 50-matrix equivariance, both pairing constants",
                  dim_ok and equi_ok and const_ok,
                  "dims=%s equivariance=%s constants=%s" % (dim_ok, equi_ok, const_ok))
    assert ok


def test_criterion_7_gram_p_smallness_at_p_greater_than_max():
    """The stated clause: gram_divisors all zero for p in {3,5,7,11,13},
    n+- <= 4, whenever p > max(n+, n-).

    This FAILS, and must: the claim is false (first failure at (1,1), p=3,
    Gram determinant -3).  Perfectness holds on this range exactly when
    p >= n+ + n- + 2, the Polo-Tilouine bound.  Do not weaken this test to
    make it green: the true divisors are what gram_divisors returns, and
    the unit tests pin them.
    """
    offenders = []
    pt_violations = []
    for a in range(5):
        for b in range(5):
            wt = repmodels.WeightTriple(a, b, 0)
            for p in (3, 5, 7, 11, 13):
                if p <= max(a, b):
                    continue
                divisors = repmodels.gram_divisors(wt, p)
                perfect = not any(divisors)
                if not perfect:
                    offenders.append((a, b, p))
                    if p >= a + b + 2:
                        pt_violations.append((a, b, p))
    print("ACCEPTANCE criterion-7-gram (perfectness whenever p > max(n+, n-)): %s"
          % ("PASS" if not offenders else "FAIL"))
    if offenders:
        print("  non-unimodular Gram at (n+, n-, p): %s" % offenders)
        print("  Polo-Tilouine bound p >= n+ + n- + 2 violated on: %s"
              % (pt_violations or "none - every failure lies below that bound"))
    assert not offenders, (
        "the p > max(n+, n-) smallness bound is refuted at %s; perfectness "
        "needs p >= n+ + n- + 2 on this range" % (offenders,))


def test_criterion_8_newvector_values():
    report = _run("newvector", seed=20267, instances=200)
    bad = [r.name for r in report.records if r.verdict == "fail"]
    ok = _verdict("criterion-8",
                  "essential-value normalization/vanishing/Schur form + normalizer dichotomy",
                  not bad, ", ".join(bad[:4]))
    assert ok


def test_all_suites_registered():
    expected = {"macdonald", "theta-bc", "lfactors", "pairing-series",
                "transposed-pairing", "asai-zeta", "newvector", "congruence",
                "pairing-lemma", "repmodels"}
    assert expected == set(SUITES)
