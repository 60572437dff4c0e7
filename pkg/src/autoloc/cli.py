"""Command-line entry point: verification suites and one-shot computations.

``autoloc check --suite NAME`` runs a named identity/lemma suite and emits a
deterministic report (exit 0 all pass, 1 any failure, 2 usage error).
``autoloc compute`` reads a JSON request naming an operation and its inputs
from stdin or --input FILE and prints the result as JSON.

Rationals serialize as reduced two-element arrays [num, den] with den > 0;
integers exceeding 64 bits are rendered as decimal strings.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import congalg, lfactors, repmodels, satake, suites, symfunc, whittaker
from .errors import InputError

_BIG = 2 ** 63 - 1


class SchemaError(InputError):
    """Request violates the published schema; carries a JSON-path location."""

    def __init__(self, path, message):
        super().__init__("%s: %s" % (path or "$", message))
        self.path = path


def _enc_int(n):
    return str(n) if abs(n) > _BIG else n


def encode_rational(x):
    x = Fraction(x)
    return [_enc_int(x.numerator), _enc_int(x.denominator)]


def encode(value):
    """Recursive JSON encoding of the package's value types."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return _enc_int(value)
    if isinstance(value, Fraction):
        return encode_rational(value)
    if isinstance(value, symfunc.TruncatedSeries):
        return {"coefficients": [encode_rational(c) for c in value.coefficients]}
    if isinstance(value, (satake.SatakeData, satake.QHalfValue, lfactors.EulerFactor,
                          lfactors.FactorValue, congalg.DVRAlgebra, congalg.Eigensystem,
                          congalg.HeckeModule, repmodels.BiHomPolynomial)):
        return value.to_json_dict()
    if isinstance(value, satake.ThetaBCReport):
        return {"equal": value.equal, "lhs": encode(value.lhs), "rhs": encode(value.rhs)}
    if isinstance(value, congalg.TransferReport):
        return {"total": value.total, "pushforward": value.pushforward,
                "transfer": value.transfer,
                "transfer_divisors": list(value.transfer_divisors)}
    if isinstance(value, congalg.LemmaReport):
        return value.to_json_dict()
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    raise InputError("cannot encode %r" % type(value).__name__)


def _expect(cond, path, message):
    if not cond:
        raise SchemaError(path, message)


def dec_int(obj, path):
    if isinstance(obj, bool):
        raise SchemaError(path, "expected an integer")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj)
        except ValueError:
            raise SchemaError(path, "not a decimal integer string")
    raise SchemaError(path, "expected an integer")


def dec_rational(obj, path):
    if isinstance(obj, bool):
        raise SchemaError(path, "expected a rational")
    if isinstance(obj, (int, str)):
        return Fraction(dec_int(obj, path))
    if isinstance(obj, list) and len(obj) == 2:
        num = dec_int(obj[0], path + "[0]")
        den = dec_int(obj[1], path + "[1]")
        _expect(den > 0, path + "[1]", "denominator must be positive")
        return Fraction(num, den)
    raise SchemaError(path, "expected [num, den] or an integer")


def dec_list(obj, path, item, min_len=0):
    _expect(isinstance(obj, list), path, "expected an array")
    _expect(len(obj) >= min_len, path, "expected at least %d entries" % min_len)
    return [item(x, "%s[%d]" % (path, i)) for i, x in enumerate(obj)]


def dec_matrix(obj, path):
    rows = dec_list(obj, path, lambda x, p: dec_list(x, p, dec_rational), min_len=1)
    _expect(all(len(r) == len(rows[0]) for r in rows), path, "ragged matrix")
    return tuple(tuple(r) for r in rows)


def _field(obj, name, path, required=True, default=None):
    _expect(isinstance(obj, dict), path, "expected an object")
    if name not in obj:
        if required:
            raise SchemaError(path, "missing field %r" % name)
        return default
    return obj[name]


def dec_satake(obj, path):
    n = dec_int(_field(obj, "n", path), path + ".n")
    q = dec_int(_field(obj, "q", path), path + ".q")
    alphas = dec_list(_field(obj, "alphas", path), path + ".alphas", dec_rational)
    conductor = dec_int(_field(obj, "conductor", path, required=False, default=0),
                        path + ".conductor")
    try:
        return satake.SatakeData(n, q, tuple(alphas), conductor)
    except InputError as exc:
        raise SchemaError(path, str(exc))


def dec_place(obj, path):
    _expect(isinstance(obj, str), path, "expected a place type string")
    return satake.PlaceType.parse(obj)


def dec_sign(obj, path):
    _expect(obj in ("+", "-"), path, "expected '+' or '-'")
    return obj


def dec_tuple_of_ints(obj, path):
    return tuple(dec_list(obj, path, dec_int))


def dec_euler_factor(obj, path):
    q = dec_int(_field(obj, "q", path), path + ".q")
    coeffs = dec_list(_field(obj, "coefficients", path), path + ".coefficients",
                      dec_rational, min_len=1)
    try:
        return lfactors.EulerFactor(q, tuple(coeffs))
    except InputError as exc:
        raise SchemaError(path, str(exc))


def dec_algebra(obj, path):
    p = dec_int(_field(obj, "p", path), path + ".p")
    dim = dec_int(_field(obj, "dim", path), path + ".dim")
    structure = _field(obj, "structure", path)
    _expect(isinstance(structure, list), path + ".structure", "expected an array")
    rows = []
    for i, row in enumerate(structure):
        rows.append(tuple(
            tuple(dec_list(vec, "%s.structure[%d][%d]" % (path, i, j), dec_rational))
            for j, vec in enumerate(dec_list(row, "%s.structure[%d]" % (path, i),
                                             lambda x, p_: x))))
    unit = tuple(dec_list(_field(obj, "unit", path), path + ".unit", dec_rational))
    try:
        return congalg.DVRAlgebra(p=p, dim=dim, structure=tuple(rows), unit=unit)
    except InputError as exc:
        raise SchemaError(path, str(exc))


def dec_eigensystem(obj, path):
    values = dec_list(_field(obj, "values", path), path + ".values", dec_rational)
    return congalg.Eigensystem(tuple(values))


def dec_module(obj, path, p):
    rank = dec_int(_field(obj, "rank", path), path + ".rank")
    mats = _field(obj, "action", path)
    _expect(isinstance(mats, list), path + ".action", "expected an array")
    action = tuple(dec_matrix(m, "%s.action[%d]" % (path, i)) for i, m in enumerate(mats))
    try:
        return congalg.HeckeModule(rank=rank, action=action, p=p)
    except InputError as exc:
        raise SchemaError(path, str(exc))


def dec_involution(obj, path):
    return congalg.SemiLinearInvolution(
        algebra_involution=dec_matrix(_field(obj, "algebra", path), path + ".algebra"),
        module_involution=dec_matrix(_field(obj, "module", path), path + ".module"))


def dec_transfer(obj, path):
    source = dec_algebra(_field(obj, "source", path), path + ".source")
    target = dec_algebra(_field(obj, "target", path), path + ".target")
    theta = dec_matrix(_field(obj, "theta", path), path + ".theta")
    try:
        return congalg.TransferData(source=source, target=target, theta=theta)
    except InputError as exc:
        raise SchemaError(path, str(exc))


def dec_weight(obj, path):
    parts = dec_list(obj, path, dec_int)
    _expect(len(parts) == 3, path, "expected [n_plus, n_minus, v]")
    try:
        return repmodels.WeightTriple(*parts)
    except InputError as exc:
        raise SchemaError(path, str(exc))


def dec_polynomial(obj, path):
    weight = dec_weight(_field(obj, "weight", path), path + ".weight")
    terms = _field(obj, "terms", path)
    _expect(isinstance(terms, list), path + ".terms", "expected an array")
    coeffs = {}
    for i, term in enumerate(terms):
        tp = "%s.terms[%d]" % (path, i)
        up = tuple(dec_list(_field(term, "x", tp), tp + ".x", dec_int))
        low = tuple(dec_list(_field(term, "a", tp), tp + ".a", dec_int))
        coef = dec_rational(_field(term, "coef", tp), tp + ".coef")
        coeffs[(up, low)] = coeffs.get((up, low), Fraction(0)) + coef
    try:
        return repmodels.BiHomPolynomial(weight, coeffs)
    except InputError as exc:
        raise SchemaError(path, str(exc))


# --- operation dispatch ----------------------------------------------------


def _op_schur(req):
    lam = dec_tuple_of_ints(_field(req, "lambda", "$"), "$.lambda")
    xs = dec_list(_field(req, "xs", "$"), "$.xs", dec_rational)
    return symfunc.schur(lam, xs)


def _op_elementary(req):
    return symfunc.elementary(dec_int(_field(req, "i", "$"), "$.i"),
                              dec_list(_field(req, "xs", "$"), "$.xs", dec_rational))


def _op_cauchy(req):
    xs = dec_list(_field(req, "xs", "$"), "$.xs", dec_rational)
    ys = dec_list(_field(req, "ys", "$"), "$.ys", dec_rational)
    max_length = _field(req, "max_length", "$", required=False)
    if max_length is not None:
        max_length = dec_int(max_length, "$.max_length")
    degree = dec_int(_field(req, "max_degree", "$"), "$.max_degree")
    return symfunc.cauchy_series(xs, ys, max_length, degree)


def _op_littlewood(req):
    xs = dec_list(_field(req, "xs", "$"), "$.xs", dec_rational)
    return symfunc.littlewood_even_series(xs, dec_int(_field(req, "max_degree", "$"),
                                                      "$.max_degree"))


def _op_modulus_half(req):
    return satake.modulus_half(dec_int(_field(req, "n", "$"), "$.n"),
                               dec_int(_field(req, "q", "$"), "$.q"),
                               dec_tuple_of_ints(_field(req, "f", "$"), "$.f"))


def _op_hecke(req):
    return satake.hecke_eigenvalue(dec_satake(_field(req, "satake", "$"), "$.satake"),
                                   dec_int(_field(req, "i", "$"), "$.i"))


def _op_bc_local(req):
    out = satake.bc_local(dec_satake(_field(req, "satake", "$"), "$.satake"),
                          dec_place(_field(req, "place", "$"), "$.place"))
    return list(out) if isinstance(out, tuple) else out


def _op_sbc(req):
    return list(satake.sbc_local_split(dec_satake(_field(req, "satake", "$"), "$.satake")))


def _op_verify_theta_bc(req):
    sd = dec_satake(_field(req, "satake", "$"), "$.satake")
    return satake.verify_theta_bc(dec_int(_field(req, "n", "$"), "$.n"),
                                  dec_int(_field(req, "i", "$"), "$.i"),
                                  sd,
                                  dec_int(_field(req, "q_v", "$", required=False,
                                                 default=sd.q), "$.q_v"))


def _op_standard_factor(req):
    return lfactors.standard_factor(dec_satake(_field(req, "satake", "$"), "$.satake"))


def _op_rankin_selberg(req):
    return lfactors.rankin_selberg_imprimitive(
        dec_satake(_field(req, "satake", "$"), "$.satake"),
        dec_satake(_field(req, "satake2", "$"), "$.satake2"))


def _op_adjoint(req):
    return lfactors.adjoint_factor(dec_satake(_field(req, "satake", "$"), "$.satake"))


def _dec_asai_args(req):
    sd = dec_satake(_field(req, "satake", "$"), "$.satake")
    place = dec_place(_field(req, "place", "$"), "$.place")
    sign = dec_sign(_field(req, "sign", "$", required=False, default="+"), "$.sign")
    partner = _field(req, "partner", "$", required=False)
    if partner is not None:
        partner = dec_satake(partner, "$.partner")
    return sd, place, sign, partner


def _op_asai(req):
    return lfactors.asai_factor(*_dec_asai_args(req))


def _op_asai_imprimitive(req):
    return lfactors.asai_imprimitive(*_dec_asai_args(req))


def _op_unitary_adjoint(req):
    place = dec_place(_field(req, "place", "$"), "$.place")
    twisted = _field(req, "twisted", "$", required=False, default=False)
    _expect(isinstance(twisted, bool), "$.twisted", "expected a boolean")
    if place is satake.PlaceType.SPLIT:
        pair_obj = _field(req, "pair", "$")
        _expect(isinstance(pair_obj, list) and len(pair_obj) == 2, "$.pair",
                "expected a two-element array of Satake records")
        data = (dec_satake(pair_obj[0], "$.pair[0]"), dec_satake(pair_obj[1], "$.pair[1]"))
    else:
        data = dec_satake(_field(req, "satake", "$"), "$.satake")
    return lfactors.unitary_adjoint_imprimitive(data, place, twisted)


def _op_evaluate(req):
    return lfactors.evaluate(dec_euler_factor(_field(req, "factor", "$"), "$.factor"),
                             dec_int(_field(req, "s", "$"), "$.s"))


def _op_essential(req):
    return whittaker.essential_value(dec_satake(_field(req, "satake", "$"), "$.satake"),
                                     dec_tuple_of_ints(_field(req, "f", "$"), "$.f"))


def _op_spherical(req):
    return whittaker.spherical_value(dec_satake(_field(req, "satake", "$"), "$.satake"),
                                     dec_tuple_of_ints(_field(req, "lambda", "$"), "$.lambda"))


def _op_transposed_normalizer(req):
    return whittaker.transposed_normalizer(dec_satake(_field(req, "satake", "$"), "$.satake"))


def _dec_series_pair(req):
    return (dec_satake(_field(req, "satake", "$"), "$.satake"),
            dec_satake(_field(req, "satake2", "$"), "$.satake2"),
            dec_int(_field(req, "max_degree", "$"), "$.max_degree"))


def _op_pairing_series(req):
    return whittaker.pairing_series(*_dec_series_pair(req))


def _op_transposed_pairing_series(req):
    return whittaker.transposed_pairing_series(*_dec_series_pair(req))


def _op_asai_zeta(req):
    return whittaker.asai_ramified_zeta_series(
        dec_satake(_field(req, "satake", "$"), "$.satake"),
        dec_int(_field(req, "max_degree", "$"), "$.max_degree"))


def _op_split_spectrum(req):
    alg = dec_algebra(_field(req, "algebra", "$"), "$.algebra")
    return [{"values": [encode_rational(v) for v in lam.values],
             "p_integral": lam.is_p_integral(alg.p)}
            for lam in congalg.split_spectrum(alg)]


def _op_congruence_number(req):
    alg = dec_algebra(_field(req, "algebra", "$"), "$.algebra")
    lam = dec_eigensystem(_field(req, "eigensystem", "$"), "$.eigensystem")
    return {"exponent": congalg.congruence_number(alg, lam)}


def _op_congruence_divisors(req):
    alg = dec_algebra(_field(req, "algebra", "$"), "$.algebra")
    lam = dec_eigensystem(_field(req, "eigensystem", "$"), "$.eigensystem")
    module = dec_module(_field(req, "module", "$"), "$.module", alg.p)
    return {"divisors": congalg.congruence_module_divisors(alg, lam, module)}


def _op_congruence_exists(req):
    alg = dec_algebra(_field(req, "algebra", "$"), "$.algebra")
    lam = dec_eigensystem(_field(req, "eigensystem", "$"), "$.eigensystem")
    return {"exists": congalg.congruence_exists(alg, lam)}


def _op_transfer_congruence(req):
    td = dec_transfer(_field(req, "transfer", "$"), "$.transfer")
    lam = dec_eigensystem(_field(req, "eigensystem", "$"), "$.eigensystem")
    module = dec_module(_field(req, "module", "$"), "$.module", td.source.p)
    return congalg.transfer_report(td, lam, module)


def _op_involution_parts(req):
    alg = dec_algebra(_field(req, "algebra", "$"), "$.algebra")
    lam = dec_eigensystem(_field(req, "eigensystem", "$"), "$.eigensystem")
    module = dec_module(_field(req, "module", "$"), "$.module", alg.p)
    inv = dec_involution(_field(req, "involution", "$"), "$.involution")
    plus, minus = congalg.involution_parts(alg, lam, module, inv)
    return {"plus": plus, "minus": minus}


def _op_verify_pairing_lemma(req):
    alg = dec_algebra(_field(req, "algebra", "$"), "$.algebra")
    lam = dec_eigensystem(_field(req, "eigensystem", "$"), "$.eigensystem")
    module_m = dec_module(_field(req, "module_m", "$"), "$.module_m", alg.p)
    module_n = dec_module(_field(req, "module_n", "$"), "$.module_n", alg.p)
    pairing = dec_matrix(_field(req, "pairing", "$"), "$.pairing")
    inv_m = dec_involution(_field(req, "involution_m", "$"), "$.involution_m")
    inv_n = dec_involution(_field(req, "involution_n", "$"), "$.involution_n")
    return congalg.verify_pairing_lemma(alg, lam, module_m, module_n, pairing, inv_m, inv_n)


def _op_verify_lf_lemma(req):
    td = dec_transfer(_field(req, "transfer", "$"), "$.transfer")
    lam = dec_eigensystem(_field(req, "eigensystem", "$"), "$.eigensystem")
    module = dec_module(_field(req, "module", "$"), "$.module", td.source.p)
    inv = dec_involution(_field(req, "involution", "$"), "$.involution")
    lform = dec_list(_field(req, "linear_form", "$"), "$.linear_form", dec_rational)
    return congalg.verify_lf_lemma(td, lam, module, inv, lform)


def _op_contraction(req):
    return repmodels.contraction(dec_polynomial(_field(req, "polynomial", "$"),
                                                "$.polynomial"))


def _op_kernel_basis(req):
    return repmodels.kernel_basis(dec_weight(_field(req, "weight", "$"), "$.weight"))


def _op_act(req):
    g = dec_matrix(_field(req, "g", "$"), "$.g")
    poly = dec_polynomial(_field(req, "polynomial", "$"), "$.polynomial")
    variant = _field(req, "variant", "$", required=False, default="standard")
    _expect(variant in ("standard", "dual"), "$.variant", "expected standard|dual")
    return repmodels.act(g, poly, variant)


def _op_pair(req):
    return repmodels.pair(dec_polynomial(_field(req, "p", "$"), "$.p"),
                          dec_polynomial(_field(req, "q", "$"), "$.q"))


def _op_vee(req):
    return repmodels.vee(dec_polynomial(_field(req, "polynomial", "$"), "$.polynomial"))


def _op_gram_divisors(req):
    return {"divisors": repmodels.gram_divisors(
        dec_weight(_field(req, "weight", "$"), "$.weight"),
        dec_int(_field(req, "p", "$"), "$.p"))}


def _op_tensor_involution(req):
    kind = _field(req, "kind", "$")
    _expect(kind in ("sigma", "vee", "epsilon"), "$.kind",
            "expected sigma|vee|epsilon")
    pair_obj = _field(req, "pair", "$")
    _expect(isinstance(pair_obj, list) and len(pair_obj) == 2, "$.pair",
            "expected a two-element array of polynomials")
    polys = (dec_polynomial(pair_obj[0], "$.pair[0]"),
             dec_polynomial(pair_obj[1], "$.pair[1]"))
    return list(repmodels.tensor_involution(kind, polys))


OPERATIONS = {
    "schur": _op_schur,
    "elementary": _op_elementary,
    "cauchy_series": _op_cauchy,
    "littlewood_even_series": _op_littlewood,
    "modulus_half": _op_modulus_half,
    "hecke_eigenvalue": _op_hecke,
    "bc_local": _op_bc_local,
    "sbc_local_split": _op_sbc,
    "verify_theta_bc": _op_verify_theta_bc,
    "standard_factor": _op_standard_factor,
    "rankin_selberg_imprimitive": _op_rankin_selberg,
    "adjoint_factor": _op_adjoint,
    "asai_factor": _op_asai,
    "asai_imprimitive": _op_asai_imprimitive,
    "unitary_adjoint_imprimitive": _op_unitary_adjoint,
    "evaluate": _op_evaluate,
    "essential_value": _op_essential,
    "spherical_value": _op_spherical,
    "transposed_normalizer": _op_transposed_normalizer,
    "pairing_series": _op_pairing_series,
    "transposed_pairing_series": _op_transposed_pairing_series,
    "asai_ramified_zeta_series": _op_asai_zeta,
    "split_spectrum": _op_split_spectrum,
    "congruence_number": _op_congruence_number,
    "congruence_module_divisors": _op_congruence_divisors,
    "congruence_exists": _op_congruence_exists,
    "transfer_congruence": _op_transfer_congruence,
    "involution_parts": _op_involution_parts,
    "verify_pairing_lemma": _op_verify_pairing_lemma,
    "verify_lf_lemma": _op_verify_lf_lemma,
    "contraction": _op_contraction,
    "kernel_basis": _op_kernel_basis,
    "act": _op_act,
    "pair": _op_pair,
    "vee": _op_vee,
    "gram_divisors": _op_gram_divisors,
    "tensor_involution": _op_tensor_involution,
}


def run_compute(request):
    _expect(isinstance(request, dict), "$", "request must be a JSON object")
    op = _field(request, "op", "$")
    _expect(isinstance(op, str), "$.op", "expected an operation name")
    if op not in OPERATIONS:
        raise SchemaError("$.op", "unknown operation %r (available: %s)"
                          % (op, ", ".join(sorted(OPERATIONS))))
    output = OPERATIONS[op](request)
    inputs = {k: v for k, v in request.items() if k != "op"}
    return {"op": op, "inputs": inputs, "output": encode(output)}


def _parse_primes(text):
    try:
        primes = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError("--primes expects a comma-separated integer list")
    if not primes:
        raise InputError("--primes expects at least one prime")
    return primes


def build_parser():
    parser = argparse.ArgumentParser(
        prog="autoloc",
        description="exact local automorphic computations: identity suites "
                    "and one-shot factor/congruence calculations")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run a verification suite")
    check.add_argument("--suite", required=True,
                       help="one of: %s" % ", ".join(sorted(suites.SUITES)))
    check.add_argument("--max-degree", type=int, default=12)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--instances", type=int, default=0,
                       help="instance count (0 = suite default)")
    check.add_argument("--primes", type=str, default="3,5,7,11,13")
    check.add_argument("--report", choices=("json", "text"), default="text")
    compute = sub.add_parser("compute", help="run one operation from a JSON request")
    compute.add_argument("--input", type=str, default=None,
                         help="request file (default: stdin)")
    compute.add_argument("--report", choices=("json",), default="json")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "check":
            cfg = suites.CheckConfig(suite=args.suite, max_degree=args.max_degree,
                                     seed=args.seed, instances=args.instances,
                                     primes=_parse_primes(args.primes))
            report = suites.run_suite(cfg)
            if args.report == "json":
                print(json.dumps(report.to_json_dict(), sort_keys=True, default=str))
            else:
                print(report.to_text())
            return 0 if report.ok else 1
        if args.command == "compute":
            if args.input:
                with open(args.input) as handle:
                    text = handle.read()
            else:
                text = sys.stdin.read()
            try:
                request = json.loads(text)
            except json.JSONDecodeError as exc:
                print("input is not valid JSON: %s" % exc, file=sys.stderr)
                return 2
            response = run_compute(request)
            print(json.dumps(response, sort_keys=True, default=str))
            return 0
    except SchemaError as exc:
        print("schema error at %s" % exc, file=sys.stderr)
        return 2
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
