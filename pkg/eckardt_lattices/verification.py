import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import cubic_pair, linalg, weighted
from .conf import get_setting
from .lattice import determinant, is_even, signature, standard_lattice
from .quadforms import discriminant_form, form_on_generators
from .roots import short_vectors

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    claim: str
    run: Callable
    informational: bool = False


@dataclass
class ReportEntry:
    id: str
    anchor: str
    status: str
    detail: str
    witness: dict = None
    claim: str = None

    def to_json(self):
        return {
            "id": self.id,
            "paper_anchor": self.anchor,
            "status": self.status,
            "claim": self.detail if self.claim is None else self.claim,
            "detail": self.detail,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    seed: int
    entries: list = field(default_factory=list)

    @property
    def summary(self):
        counts = {PASS: 0, FAIL: 0, INFO: 0}
        for entry in self.entries:
            counts[entry.status] += 1
        return {"total": len(self.entries), "passed": counts[PASS], "failed": counts[FAIL], "info": counts[INFO]}

    @property
    def passed(self):
        return all(entry.status != FAIL for entry in self.entries)

    def to_json(self):
        return {
            "seed": self.seed,
            "entries": [entry.to_json() for entry in self.entries],
            "summary": self.summary,
        }


def jsonable(value):
    """Exact values to JSON: rationals as "p/q" strings, tuples as lists."""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if hasattr(value, "to_json"):
        return jsonable(value.to_json())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


# lattice M


def check_build_M(seed):
    M = cubic_pair.build_M()
    inverse = linalg.inverse(M.matrix)
    expected_first_row = [Fraction(4)] + [Fraction(-3, 2)] * 6
    rest_ok = all(
        inverse[i][j] == (1 if i == j else Fraction(1, 2)) for i in range(1, 7) for j in range(1, 7)
    )
    return {
        "passed": determinant(M) == 64
        and signature(M) == (7, 0, 0)
        and not is_even(M)
        and inverse[0] == expected_first_row
        and rest_ok,
        "determinant": determinant(M),
        "signature": signature(M),
        "inverse_first_row": inverse[0],
    }


def check_discriminant_M(seed):
    M = cubic_pair.build_M()
    form = form_on_generators(M, cubic_pair.dual_F_generators(M))
    expected = [[Fraction(0) if i == j else Fraction(1, 2) for j in range(6)] for i in range(6)]
    generic = discriminant_form(M)
    return {
        "passed": list(form.orders) == [2] * 6 and [list(r) for r in form.bilinear] == expected and generic.order == 64,
        "orders": form.orders,
        "bilinear": form.bilinear,
    }


def check_h2_perp(seed):
    complement = cubic_pair.primitive_part_h2()
    lattice = complement.lattice
    return {
        "passed": determinant(lattice) == 192 and is_even(lattice) and all(lattice.gram[i][i] == 4 for i in range(6)),
        "determinant": determinant(lattice),
        "gram": lattice.gram,
        "matching": complement.matching,
    }


def check_s_beta_group(seed):
    orders = cubic_pair.s_beta_group_orders()
    return {"passed": orders == {"all": 51840, "transpositions": 720}, **orders}


# lattice T


def check_types(seed):
    T = cubic_pair.build_T()
    nodal = cubic_pair.classify_vector(T.combination(e1=1, f1=1))
    tangential = cubic_pair.classify_vector(T.combination(a1=1, a3=1))
    other = cubic_pair.classify_vector(T.combination(e1=2))
    return {
        "passed": nodal.label == cubic_pair.NODAL
        and not any(nodal.v_hat)
        and tangential.label == cubic_pair.TANGENTIAL
        and tangential.q_value == 1
        and other.label == cubic_pair.OTHER,
        "e1+f1": nodal,
        "a1+a3": tangential,
        "2e1": other,
    }


def check_embedding_roots(seed):
    d4 = short_vectors(standard_lattice("D4"), 2)
    d5 = short_vectors(standard_lattice("D5"), 2)
    result = cubic_pair.verify_T_embedding()
    result["passed"] = result["passed"] and 2 * len(d4) == 24 and 2 * len(d5) == 40
    result["D4_roots"], result["D5_roots"] = 2 * len(d4), 2 * len(d5)
    return result


# Borcherds form


def check_nodal_root(seed):
    found = cubic_pair.classify_root_delta(cubic_pair.nodal_witness_root())
    return {
        "passed": found.saturation_roots == 74 and found.coefficient == Fraction(1, 2) and found.m == 1,
        "classification": found,
    }


def check_tangential_root(seed):
    delta = cubic_pair.tangential_witness_root()
    found = cubic_pair.classify_root_delta(delta)
    return {
        "passed": found.saturation_roots == 88 and found.coefficient == 8 and found.label == cubic_pair.TANGENTIAL,
        "delta": str(delta),
        "classification": found,
    }


def check_relation(seed):
    report = cubic_pair.borcherds_relation()
    return {
        "passed": report.weight == 48
        and report.star_coefficients == (Fraction(1, 2), 8)
        and report.plus_relation == (1, 2)
        and report.ramification_divisor == cubic_pair.RAMIFICATION_ORDER
        and report.tangential_classes == 9,
        "relation": report,
    }


# weighted projective spaces


def check_partitions(seed):
    four = weighted.unit_fraction_partitions(1, 4)
    three = weighted.unit_fraction_partitions(1, 3)
    return {
        "passed": tuple(four) == weighted.PARTITIONS_OF_ONE_INTO_FOUR
        and tuple(three) == weighted.PARTITIONS_OF_ONE_INTO_THREE,
        "into_four": len(four),
        "into_three": three,
    }


def check_quasi_k3_fourfolds(seed):
    rows = weighted.classify_quasi_k3_fermat_fourfolds()
    computed = sorted((row["case"], tuple(row["weights"]), row["degree"], row["h22_prim"]) for row in rows)
    expected = sorted(weighted.QUASI_K3_FOURFOLDS)
    structural = set(weighted.unit_fraction_partitions(2, 6)) == weighted.structural_families()
    return {
        "passed": computed == expected
        and structural
        and all(row["hodge"][1] == 1 and row["hodge"][0] == 0 for row in rows),
        "rows": len(rows),
        "matches_structural_families": structural,
        "unmatched": [row for row in rows if row["case"] is None],
    }


def check_infinite_family(seed):
    results = [weighted.infinite_family_check(d, e) for d, e in ((4, 1), (4, 3), (5, 1))]
    return {"passed": all(r["passed"] for r in results), "cases": results}


def check_eigenspaces(seed):
    odd, even, h31 = weighted.eckardt_fermat_eigenspaces()
    return {
        "passed": (odd, even, h31) == (6, 14, 1)
        and odd + even == weighted.fermat_hodge_numbers((1,) * 6, 3)[2]
        and weighted.jacobian_lead_terms() == weighted.expected_lead_terms(),
        "invariant": odd,
        "anti_invariant": even,
        "h31": h31,
    }


def check_threefold_sections(seed):
    sections = weighted.threefold_section_h21()
    return {"passed": all(s["h21"] == s["expected"] for s in sections.values()), "sections": sections}


def _wrap(function):
    def run(seed):
        return function()

    return run


CHECKS = (
    Check("lattice_m.build", "Gram matrix of M", "det 64, positive definite, odd, inverse as displayed", check_build_M),
    Check("lattice_m.discriminant", "discriminant form of M", "A_M = (Z/2)^6 with b = 1/2 off the diagonal", check_discriminant_M),
    Check("lattice_m.isotropy", "saturation of M", "every class of A_M is isotropic; six coset identities", _wrap(cubic_pair.verify_isotropy_of_AM)),
    Check("lattice_m.h2_perp", "primitive part", "the complement of h^2 in M is E6(2)", check_h2_perp),
    Check("lattice_m.s_beta", "isometries of M", "s_beta matrices, induced action and change of basis", _wrap(cubic_pair.verify_s_beta_matrices)),
    Check("lattice_m.h_infinity", "boundary divisor", "no x with x^2 = x.h^2 = 1 extends M positively", _wrap(cubic_pair.h_infinity_avoidance)),
    Check("lattice_t.invariants", "invariants of T", "U^2 + D4^3 has the invariants of v^3", _wrap(cubic_pair.sigma_o16_invariant_match)),
    Check("gluing.lambda", "middle cohomology", "M and T glue to an odd unimodular lattice of signature (21,2)", _wrap(cubic_pair.verify_Lambda)),
    Check("weyl.orthogonal_group", "O(q_T)", "|O(q_T)| = 51840, generated by the induced s*_beta", _wrap(cubic_pair.verify_weyl_action)),
    Check("weyl.e6_quotient", "E6/2E6", "(E6/2E6, q) = q_T and the roots reduce to the 36 classes with q = 1", _wrap(cubic_pair.verify_e6_quotient)),
    Check("weyl.s_beta_group", "isometries of M", "s_beta generate a group of order 51840; transpositions 720", check_s_beta_group),
    Check("types.examples", "vector types", "e1+f1 nodal, a1+a3 tangential, 2e1 other", check_types),
    Check("types.census", "tangential classes", "36 representatives, distinct classes, one orbit", _wrap(cubic_pair.type2_orbit_census)),
    Check("types.eichler", "orbit invariants", "reflections in norm +-2 vectors keep type and class, tangential ones act on A_T", cubic_pair.eichler_spot_check),
    Check("embedding.t_in_ii262", "embedding of T", "T is primitive in II_{26,2} with complement D4^3", check_embedding_roots),
    Check("borcherds.nodal_root", "quasi-pullback", "nodal roots saturate to A1 + D4^3, coefficient 1/2", check_nodal_root),
    Check("borcherds.tangential_root", "quasi-pullback", "tangential roots saturate to D5 + D4^2, coefficient 8", check_tangential_root),
    Check("borcherds.relation", "Hodge bundle relation", "weight 48 and lambda ~ H_n + 2 H_t", check_relation),
    Check("borcherds.bruinier_sum", "Picard rank", "the cusp form count is 21, Picard rank 22", _wrap(cubic_pair.bruinier_sum_check)),
    Check("appendix.partitions", "unit fractions", "14 partitions of 1 into four and 3 into three", check_partitions),
    Check("appendix.fourfolds", "quasi-K3 Fermat fourfolds", "17 families with the listed h^{2,2}_prim", check_quasi_k3_fourfolds),
    Check("appendix.counterexamples", "numerical K3", "numerical K3 but not quasi-K3, quasi-K3 without Fermat", _wrap(weighted.counterexample_report)),
    Check("appendix.infinite_family", "quasi-K3 without Fermat", "the family of degree 2^d has no Fermat member", check_infinite_family),
    Check("appendix.eigenspaces", "Eckardt cubic", "(invariant, anti-invariant, h^{3,1}) = (6, 14, 1)", check_eigenspaces),
    Check("appendix.threefold_sections", "hyperplane sections", "h^{2,1} of the sections of N1, N2, N3", check_threefold_sections, informational=True),
)


def run_check(check, seed):
    try:
        result = check.run(seed)
    except Exception as e:
        logger.exception("check %s raised", check.id)
        return ReportEntry(
            check.id, check.anchor, INFO if check.informational else FAIL, f"{check.claim}: {e}", None, check.claim
        )
    passed = bool(result.pop("passed"))
    if check.informational:
        status = INFO
    else:
        status = PASS if passed else FAIL
    if status == FAIL:
        logger.warning("check %s failed", check.id)
    return ReportEntry(check.id, check.anchor, status, check.claim, jsonable(result), check.claim)


def verify(only=None, seed=None):
    seed = get_setting("SEED") if seed is None else seed
    report = VerificationReport(seed)
    for check in sorted(CHECKS, key=lambda c: c.id):
        if only and not check.id.startswith(only):
            continue
        logger.info("running %s", check.id)
        report.entries.append(run_check(check, seed))
    return report
