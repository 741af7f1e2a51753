"""Weighted projective hypersurfaces of Fermat type and their primitive Hodge numbers.

For a Fermat hypersurface sum z_i^{n_i} of degree d in P(w_0, ..., w_m), the
Jacobian ring is spanned by the monomials z^e with 0 <= e_i <= n_i - 2, and
h^{m-1-j,j}_prim is the number of them of weighted degree (j + 1) d - s where
s is the sum of the weights.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import ceil, floor, gcd, lcm

import sympy

from .exceptions import InconsistentClassification, InvalidParams, NoFermatMember, OddDimension

logger = logging.getLogger(__name__)

# (case, weights, degree, h^{2,2}_prim) for the quasi-K3 Fermat fourfolds
QUASI_K3_FOURFOLDS = (
    ("N1", (1, 1, 1, 1, 1, 1), 3, 20),
    ("N2", (1, 2, 2, 2, 2, 3), 6, 14),
    ("N3", (3, 3, 4, 4, 4, 6), 12, 2),
    ("N4", (1, 1, 1, 1, 2, 2), 4, 19),
    ("N5", (1, 1, 1, 3, 3, 3), 6, 19),
    ("N6", (1, 1, 4, 6, 6, 6), 12, 18),
    ("N7", (1, 1, 2, 4, 4, 4), 8, 17),
    ("N8", (1, 1, 2, 2, 3, 3), 6, 16),
    ("N9", (1, 2, 2, 5, 5, 5), 10, 14),
    ("N10", (1, 2, 6, 9, 9, 9), 18, 14),
    ("N11", (1, 2, 3, 6, 6, 6), 12, 13),
    ("N12", (1, 3, 8, 12, 12, 12), 24, 12),
    ("N13", (1, 3, 4, 4, 6, 6), 12, 10),
    ("N14", (1, 4, 5, 10, 10, 10), 20, 10),
    ("N15", (1, 6, 14, 21, 21, 21), 42, 10),
    ("N16", (2, 3, 3, 4, 6, 6), 12, 8),
    ("N17", (2, 3, 10, 15, 15, 15), 30, 8),
)

PARTITIONS_OF_ONE_INTO_FOUR = (
    (2, 3, 7, 42),
    (2, 3, 8, 24),
    (2, 3, 9, 18),
    (2, 3, 10, 15),
    (2, 3, 12, 12),
    (2, 4, 5, 20),
    (2, 4, 6, 12),
    (2, 4, 8, 8),
    (2, 5, 5, 10),
    (2, 6, 6, 6),
    (3, 3, 4, 12),
    (3, 3, 6, 6),
    (3, 4, 4, 6),
    (4, 4, 4, 4),
)

PARTITIONS_OF_ONE_INTO_THREE = ((2, 3, 6), (2, 4, 4), (3, 3, 3))

# hyperplane sections of N1, N2, N3 by a coordinate of the given weight
THREEFOLD_SECTIONS = (("N1", 1, 5), ("N2", 2, 4), ("N3", 4, 2))


@dataclass(frozen=True)
class WeightedHypersurface:
    weights: tuple
    degree: int

    def __post_init__(self):
        if len(self.weights) < 2 or any(w <= 0 for w in self.weights) or self.degree <= 0:
            raise InvalidParams(f"P{self.weights} of degree {self.degree} is not a hypersurface")

    def __str__(self):
        return f"P({','.join(map(str, self.weights))}) degree {self.degree}"

    @property
    def dimension(self):
        return len(self.weights) - 2

    @property
    def s(self):
        return s_of(self.weights)

    @property
    def exponents(self):
        return tuple(self.degree // w for w in self.weights)

    def to_json(self):
        return {"weights": list(self.weights), "degree": self.degree}


def _hypersurface(weights, degree):
    return WeightedHypersurface(tuple(int(w) for w in weights), int(degree))


def s_of(weights):
    return sum(weights)


def is_well_formed(weights):
    return all(
        reduce(gcd, weights[:i] + weights[i + 1 :], 0) == 1 for i in range(len(weights))
    )


def fermat_exists(weights, degree):
    return all(degree % w == 0 and degree // w >= 2 for w in weights)


def is_quasi_k3(weights, degree):
    m = len(weights) - 1
    return Fraction((m - 1) * degree, 2) == s_of(weights)


def _monomial_counts(weights, bounds, top):
    """counts[t] = #{e : 0 <= e_i <= bounds[i], sum w_i e_i = t} for t <= top."""
    counts = [1] + [0] * top
    for w, bound in zip(weights, bounds):
        updated = [0] * (top + 1)
        for t, c in enumerate(counts):
            if not c:
                continue
            for e in range(bound + 1):
                if t + e * w > top:
                    break
                updated[t + e * w] += c
        counts = updated
    return counts


def fermat_hodge_numbers(weights, degree):
    """[h^{m-1,0}_prim, h^{m-2,1}_prim, ..., h^{0,m-1}_prim] of the Fermat member."""
    weights = tuple(weights)
    if not fermat_exists(weights, degree):
        raise NoFermatMember(f"P{weights} has no Fermat hypersurface of degree {degree}")
    m = len(weights) - 1
    s = s_of(weights)
    bounds = [degree // w - 2 for w in weights]
    top = m * degree - s
    counts = _monomial_counts(weights, bounds, max(top, 0))
    hodge = []
    for j in range(m):
        target = (j + 1) * degree - s
        hodge.append(counts[target] if 0 <= target <= top else 0)
    return hodge


def is_numerical_k3_fermat(weights, degree):
    dimension = len(weights) - 2
    if dimension % 2:
        raise OddDimension(f"P{tuple(weights)} hypersurfaces have odd dimension {dimension}")
    n = dimension // 2
    hodge = fermat_hodge_numbers(weights, degree)
    return hodge[n - 1] == 1 and not any(hodge[: n - 1])


def unit_fraction_partitions(target, parts):
    """Nondecreasing tuples (n_1, ..., n_k), n_i >= 2, with sum 1/n_i == target."""
    target = Fraction(target)
    if target <= 0 or parts < 1:
        raise InvalidParams(f"cannot split {target} into {parts} unit fractions")
    found = []

    def search(prefix, remaining, left):
        if left == 1:
            if remaining.numerator == 1 and remaining.denominator >= max(2, prefix[-1] if prefix else 2):
                found.append(tuple(prefix) + (remaining.denominator,))
            return
        low = max(prefix[-1] if prefix else 2, 2, ceil(1 / remaining))
        high = floor(left / remaining)
        for n in range(low, high + 1):
            rest = remaining - Fraction(1, n)
            if rest > 0:
                search(prefix + [n], rest, left - 1)

    search([], target, parts)
    return sorted(found)


def well_form(weights, degree):
    """Divide out common factors until the weights are well formed.

    A factor shared by all weights is removed from the weights and the degree;
    a prime dividing all weights but one is removed from those weights and the
    degree when it divides the degree.
    """
    weights, degree = list(weights), degree
    while True:
        g = reduce(gcd, weights, 0)
        if g > 1 and degree % g == 0:
            weights, degree = [w // g for w in weights], degree // g
            continue
        for i in range(len(weights)):
            p = reduce(gcd, weights[:i] + weights[i + 1 :], 0)
            if p > 1 and degree % p == 0:
                weights = [w if k == i else w // p for k, w in enumerate(weights)]
                degree //= p
                break
        else:
            return tuple(weights), degree


def _known_fourfolds():
    return {(weights, degree): (case, h22) for case, weights, degree, h22 in QUASI_K3_FOURFOLDS}


def _row(multiset):
    degree = lcm(*multiset)
    weights, degree = well_form([degree // n for n in multiset], degree)
    weights = tuple(sorted(weights))
    hodge = fermat_hodge_numbers(weights, degree)
    case, _ = _known_fourfolds().get((weights, degree), (None, None))
    return {
        "case": case,
        "weights": list(weights),
        "degree": degree,
        "h22_prim": hodge[2],
        "hodge": hodge,
        "exponents": list(multiset),
    }


def structural_families():
    """1/2 + 1/2 + a partition of 1 into four, or the sum of two partitions of 1 into three."""
    halves = {tuple(sorted((2, 2) + p)) for p in unit_fraction_partitions(1, 4)}
    pairs = {
        tuple(sorted(a + b))
        for a, b in itertools.combinations_with_replacement(unit_fraction_partitions(1, 3), 2)
    }
    return halves | pairs


def classify_quasi_k3_fermat_fourfolds():
    multisets = unit_fraction_partitions(2, 6)
    structural = structural_families()
    if set(multisets) != structural:
        raise InconsistentClassification(
            f"direct enumeration gives {len(multisets)} partitions, the structural families {len(structural)}"
        )
    rows = {}
    for multiset in multisets:
        row = _row(multiset)
        rows.setdefault((tuple(row["weights"]), row["degree"]), row)
    logger.info("%s partitions give %s distinct fourfolds", len(multisets), len(rows))
    return [rows[key] for key in sorted(rows)]


def infinite_family_check(d, e):
    if d < 3 or not 0 < e < 2 ** (d - 1):
        raise InvalidParams(f"need d >= 3 and 0 < e < 2^(d-1), got d={d}, e={e}")
    quarter = 2 ** (d - 2)
    weights = (quarter,) * 4 + (2 ** (d - 1) - e, 2 ** (d - 1) + e)
    degree = 2**d
    quasi = is_quasi_k3(weights, degree)
    fermat = fermat_exists(weights, degree)
    return {
        "passed": quasi and not fermat,
        "weights": list(weights),
        "degree": degree,
        "quasi_k3": quasi,
        "fermat": fermat,
    }


def jacobian_lead_terms():
    """Lead exponents of a grevlex Groebner basis of the Jacobian ideal of y0^3 + ... + y4^3 + y0 y5^2."""
    ys = sympy.symbols("y0:6")
    F = sum(y**3 for y in ys[:5]) + ys[0] * ys[5] ** 2
    basis = sympy.groebner([sympy.diff(F, y) for y in ys], *ys, order="grevlex")
    return sorted(g.monoms(order="grevlex")[0] for g in basis.polys)


def eckardt_fermat_eigenspaces():
    """Split the degree-3 part of the Jacobian ring by parity in y5.

    Returns (odd in y5, even in y5, h^{3,1}).
    """
    leads = jacobian_lead_terms()

    def standard(monomial):
        return not any(all(a >= b for a, b in zip(monomial, lead)) for lead in leads)

    degree_three = [
        e for e in itertools.product(range(4), repeat=6) if sum(e) == 3 and standard(e)
    ]
    odd = sum(1 for e in degree_three if e[5] % 2)
    even = len(degree_three) - odd
    h31 = int(standard((0,) * 6))
    return odd, even, h31


def expected_lead_terms():
    unit = [[int(i == j) for j in range(6)] for i in range(6)]
    leads = [tuple(2 * x for x in unit[i]) for i in range(5)]
    leads.append(tuple(a + b for a, b in zip(unit[0], unit[5])))
    leads.append(tuple(3 * x for x in unit[5]))
    return sorted(leads)


def threefold_section_h21():
    """h^{2,1} of the Fermat threefold cut out by a coordinate of the given weight."""
    table = {case: (weights, degree) for case, weights, degree, _ in QUASI_K3_FOURFOLDS}
    result = {}
    for case, weight, expected in THREEFOLD_SECTIONS:
        weights, degree = table[case]
        weights = list(weights)
        weights.remove(weight)
        h21 = fermat_hodge_numbers(weights, degree)[1]
        result[case] = {"weights": weights, "degree": degree, "h21": h21, "expected": expected}
    return result


COUNTEREXAMPLES = (
    ((1, 3, 5, 5), 15),
    ((2, 3, 3, 4, 4, 6), 12),
    ((1, 4, 5, 5, 10, 15), 20),
)


def counterexample_report():
    surface, fourfold, no_fermat = COUNTEREXAMPLES
    h20 = fermat_hodge_numbers(*surface)[0]
    return {
        "passed": (
            h20 == 1
            and is_numerical_k3_fermat(*surface)
            and not is_quasi_k3(*surface)
            and is_numerical_k3_fermat(*fourfold)
            and not is_quasi_k3(*fourfold)
            and is_quasi_k3(*no_fermat)
            and not fermat_exists(*no_fermat)
        ),
        "surface_h20": h20,
        "surface": str(_hypersurface(*surface)),
        "fourfold": str(_hypersurface(*fourfold)),
        "without_fermat": str(_hypersurface(*no_fermat)),
    }
