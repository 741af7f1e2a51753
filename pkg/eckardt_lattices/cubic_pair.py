"""The lattice pair attached to a cubic fourfold with an Eckardt point.

``M`` is spanned by the classes F0..F6 of the cone over the Eckardt point and
the six planes through it, ``T = U + U + D4 + D4 + D4`` is its orthogonal
complement in the middle cohomology. Everything here is exact and returns
plain dicts or small records so the report runner can serialize it.
"""

import functools
import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import linalg
from .conf import get_setting
from .exceptions import (
    GlueSearchFailed,
    LatticeError,
    NotARoot,
    NotPositiveDefiniteSpan,
    ZeroVector,
)
from .lattice import (
    LatticeEmbedding,
    LatticeVector,
    determinant,
    direct_sum,
    divisibility,
    glue,
    is_even,
    is_primitive,
    make_lattice,
    orthogonal_complement,
    preserves_form,
    reflection_matrix,
    relabel,
    rescale,
    saturate_rows,
    signature,
    standard_lattice,
)
from .quadforms import (
    ANTI_ISOMETRY,
    action_matrix,
    arf_invariant,
    characteristic_refinement,
    form_on_generators,
    induced_action,
    is_morphism,
    isometry_search,
    orbit,
    orthogonal_group,
    orthogonal_sum,
    quotient_form_E6,
    transport,
    v_form,
    value_distribution,
)
from .roots import find_isometry, reflection_group_order, root_count, roots_of

logger = logging.getLogger(__name__)

NODAL = "Nodal"
TANGENTIAL = "Tangential"
OTHER = "Other"

RAMIFICATION_ORDER = 8
TANGENTIAL_CLASSES = 36

M_LABELS = tuple(f"F{i}" for i in range(7))
D4_PREFIXES = ("a", "b", "c")

S_BETA_1 = (
    (2, 1, 1, 1, 0, 0, 0),
    (-1, 0, -1, -1, 0, 0, 0),
    (-1, -1, 0, -1, 0, 0, 0),
    (-1, -1, -1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 1),
)

# action of s_beta_1 on A_M in the basis [F1]*, ..., [F6]*, columns are images
INDUCED_S_BETA_1 = (
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (1, 1, 1, 1, 0, 0),
    (1, 1, 1, 0, 1, 0),
    (1, 1, 1, 0, 0, 1),
)

# columns are the classes of beta_1/2, ..., beta_6/2 in the basis [F1]*, ..., [F6]*
CHANGE_OF_BASIS = (
    (0, 1, 0, 0, 0, 0),
    (0, -1, 1, 0, 0, 0),
    (0, 0, -1, 1, 0, 0),
    (1, 0, 0, -1, -1, 0),
    (-1, 0, 0, 0, 1, 1),
    (1, 0, 0, 0, 0, -1),
)

# beta_1, ..., beta_6 correspond to the Bourbaki simple roots a2, a1, a3, a4, a5, a6 of E6
E6_MATCHING = (1, 0, 2, 3, 4, 5)


def _half(coords):
    return [Fraction(x, 2) for x in coords]


def _mod2(matrix):
    return [[x % 2 for x in row] for row in matrix]


# M and its discriminant group


def build_M():
    gram = [[1] * 7 for _ in range(7)]
    gram[0][0] = 7
    for i in range(1, 7):
        gram[0][i] = gram[i][0] = 3
        gram[i][i] = 3
    return make_lattice(M_LABELS, gram)


def h2_vector(M=None):
    M = M or build_M()
    return M.vector((3, -1, -1, -1, -1, -1, -1))


def dual_F_generators(M=None):
    """[F1]*, ..., [F6]* as rational vectors in the basis F0..F6."""
    M = M or build_M()
    inverse = linalg.inverse(M.matrix)
    return [tuple(inverse[i]) for i in range(1, 7)]


def verify_isotropy_of_AM():
    M = build_M()
    h2 = h2_vector(M)
    form = form_on_generators(M, dual_F_generators(M))
    presentation = form.presentation
    isotropic = [x for x in form.elements if form.b(x, x) == 0]

    F = [M.basis_vector(label) for label in M_LABELS]
    cosets = {
        1: h2 - F[1],
        2: F[2] - F[1],
        3: F[0] - F[4] - F[5] - F[6],
        4: F[1] + F[2] - F[3] - F[4],
        5: F[0] - F[6],
        6: h2 - F[0],
    }
    identities = {}
    for k, vector in cosets.items():
        element = tuple(int(i < k) for i in range(6))
        identities[k] = presentation.coordinates(_half(vector.coords)) == element
    return {
        "passed": len(isotropic) == form.order == 64 and all(identities.values()),
        "isotropic": len(isotropic),
        "order": form.order,
        "cosets": {str(cosets[k]): ok for k, ok in identities.items()},
    }


def beta_basis(M=None):
    M = M or build_M()
    b1 = M.combination(F0=-1, F1=1, F2=1, F3=1)
    rest = [M.combination(**{f"F{j}": 1, f"F{j - 1}": -1}) for j in range(2, 7)]
    return [b1] + rest


class H2Complement(NamedTuple):
    lattice: object
    embedding: LatticeEmbedding
    matching: tuple


def primitive_part_h2():
    M = build_M()
    betas = beta_basis(M)
    rows = [list(b.coords) for b in betas]
    embedding = LatticeEmbedding(
        make_lattice([f"beta{i + 1}" for i in range(6)], linalg.gram_of(M.matrix, rows)),
        M,
        tuple(tuple(r) for r in rows),
    )
    complement = orthogonal_complement(_h2_embedding(M))
    if not embedding.same_image(complement):
        raise LatticeError("the beta vectors do not span the complement of h^2")
    e6 = rescale(standard_lattice("E6"), 2)
    gram = embedding.sub.gram
    for i, j in itertools.product(range(6), repeat=2):
        if gram[i][j] != e6.gram[E6_MATCHING[i]][E6_MATCHING[j]]:
            raise LatticeError(f"beta Gram entry ({i},{j}) does not match E6(2)")
    return H2Complement(embedding.sub, embedding, E6_MATCHING)


def _h2_embedding(M):
    h2 = h2_vector(M)
    return LatticeEmbedding(make_lattice(["h2"], [[h2.norm()]]), M, (h2.coords,))


def s_beta_matrices():
    """The six isometries s_beta_i of M, columns are images of F0..F6."""
    matrices = [[list(row) for row in S_BETA_1]]
    for j in range(2, 7):
        matrix = linalg.identity(7)
        matrix[j - 1][j - 1] = matrix[j][j] = 0
        matrix[j - 1][j] = matrix[j][j - 1] = 1
        matrices.append(matrix)
    return matrices


def induced_s_beta_1_expected():
    return [list(row) for row in INDUCED_S_BETA_1]


def induced_transposition(j):
    """Swap of [F_{j-1}]* and [F_j]* in the basis [F1]*..[F6]*."""
    matrix = linalg.identity(6)
    a, b = j - 2, j - 1
    matrix[a][a] = matrix[b][b] = 0
    matrix[a][b] = matrix[b][a] = 1
    return matrix


def verify_s_beta_matrices():
    M = build_M()
    h2 = h2_vector(M)
    form = form_on_generators(M, dual_F_generators(M))
    matrices = s_beta_matrices()
    betas = beta_basis(M)
    checks = {}
    induced = []
    for i, (matrix, beta) in enumerate(zip(matrices, betas), start=1):
        reflection = reflection_matrix(beta)
        images = induced_action(M, form, matrix)
        induced.append(action_matrix(images))
        expected = induced_s_beta_1_expected() if i == 1 else induced_transposition(i)
        checks[f"s_beta_{i}"] = {
            "is_reflection": reflection.matrix == matrix,
            "preserves_gram": preserves_form(M, matrix),
            "fixes_h2": linalg.mat_vec(matrix, h2.coords) == list(h2.coords),
            "unimodular": abs(linalg.determinant(matrix)) == 1,
            "induced_matches": _mod2(induced[-1]) == _mod2(expected),
        }
    image_of_F0 = [row[0] for row in matrices[0]]
    change = verify_change_of_basis(induced)
    passed = all(all(c.values()) for c in checks.values()) and change["passed"]
    return {
        "passed": passed and image_of_F0 == [2, -1, -1, -1, 0, 0, 0],
        "checks": checks,
        "s_beta_1_F0": str(M.vector(image_of_F0)),
        "change_of_basis": change,
    }


def verify_change_of_basis(induced=None):
    """In the basis of half-betas the induced maps are the reflections of E6/2E6."""
    M = build_M()
    presentation = form_on_generators(M, dual_F_generators(M)).presentation
    if induced is None:
        form = form_on_generators(M, dual_F_generators(M))
        induced = [action_matrix(induced_action(M, form, m)) for m in s_beta_matrices()]
    P = [list(row) for row in CHANGE_OF_BASIS]
    columns_match = all(
        presentation.coordinates(_half(beta.coords)) == tuple(row[k] % 2 for row in P)
        for k, beta in enumerate(beta_basis(M))
    )
    cartan = [[x // 2 for x in row] for row in primitive_part_h2().lattice.gram]
    conjugates = []
    for i, S in enumerate(induced):
        R = linalg.identity(6)
        for k in range(6):
            R[i][k] -= cartan[i][k]
        conjugates.append(_mod2(linalg.mat_mul(S, P)) == _mod2(linalg.mat_mul(P, R)))
    return {
        "passed": columns_match and linalg.determinant(P) % 2 == 1 and all(conjugates),
        "columns_are_half_betas": columns_match,
        "conjugates": conjugates,
    }


def s_beta_group_orders(cap=None):
    M = build_M()
    matrices = s_beta_matrices()
    return {
        "all": reflection_group_order(M, matrices, cap=cap),
        "transpositions": reflection_group_order(M, matrices[1:], cap=cap),
    }


# T and its discriminant form


def build_T():
    pieces = [relabel(standard_lattice("U"), ["e1", "f1"]), relabel(standard_lattice("U"), ["e2", "f2"])]
    for prefix in D4_PREFIXES:
        pieces.append(relabel(standard_lattice("D4"), [f"{prefix}{i}" for i in range(1, 5)]))
    return direct_sum(*pieces)


def t_generators(T=None):
    """1/2(x1 + x3) and 1/2(x1 + x4) for each D4 summand."""
    T = T or build_T()
    generators = []
    for prefix in D4_PREFIXES:
        for other in (3, 4):
            v = T.combination(**{f"{prefix}1": 1, f"{prefix}{other}": 1})
            generators.append(tuple(_half(v.coords)))
    return generators


@functools.cache
def t_form():
    T = build_T()
    return form_on_generators(T, t_generators(T))


def t_invariants():
    T = build_T()
    form = t_form()
    witness = isometry_search(form, orthogonal_sum(v_form(), v_form(), v_form()))
    return {
        "rank": T.rank,
        "signature": list(signature(T)),
        "even": is_even(T),
        "determinant": determinant(T),
        "orders": list(form.orders),
        "distribution": {str(k): v for k, v in value_distribution(form).items()},
        "arf": arf_invariant(form),
        "isometric_to_v3": witness is not None,
    }


def t_invariants_pass(invariants):
    return (
        invariants["rank"] == 16
        and invariants["signature"] == [14, 2, 0]
        and invariants["even"]
        and invariants["determinant"] == 64
        and invariants["orders"] == [2] * 6
        and invariants["distribution"] == {"0": 28, "1": 36}
        and invariants["arf"] == 1
        and invariants["isometric_to_v3"]
    )


def sigma_o16_invariant_match():
    invariants = t_invariants()
    invariants["passed"] = t_invariants_pass(invariants)
    invariants["identification"] = "Milnor lattice of the cusp singularity"
    return invariants


# the glued unimodular lattice


@dataclass(frozen=True)
class EckardtLatticeData:
    M: object
    h2: LatticeVector
    T: object
    m_form: object
    t_form: object
    anti_isometry: tuple
    lattice: object
    m_embedding: LatticeEmbedding
    t_embedding: LatticeEmbedding

    @property
    def h2_image(self):
        return self.m_embedding.image_of(self.h2.coords)


@functools.cache
def realize_Lambda():
    """Glue M and T along an anti-isometry of discriminant forms.

    On A_M the form x^2 - x.h^2 is used, so h^2 stays characteristic and the
    isometries of M fixing h^2 descend to O(q_T).
    """
    M, T = build_M(), build_T()
    h2 = h2_vector(M)
    m_form = characteristic_refinement(M, h2.coords, generators=dual_F_generators(M))
    target = t_form()
    phi = isometry_search(m_form, target, ANTI_ISOMETRY)
    if phi is None:
        raise GlueSearchFailed("no anti-isometry between the discriminant forms of M and T")
    graph = [
        (generator, target.presentation.representative(image))
        for generator, image in zip(m_form.presentation.generators, phi)
    ]
    gluing = glue(M, T, graph)
    logger.info("glued M and T with index %s", gluing.index)
    return EckardtLatticeData(M, h2, T, m_form, target, phi, gluing.lattice, gluing.first, gluing.second)


def h2_is_characteristic(data):
    lattice = data.lattice
    h2 = data.h2_image
    pairings = linalg.mat_vec(lattice.matrix, h2.coords)
    return all((lattice.gram[i][i] - pairings[i]) % 2 == 0 for i in range(lattice.rank))


def verify_Lambda():
    data = realize_Lambda()
    lattice = data.lattice
    m_perp = orthogonal_complement(data.m_embedding)
    t_perp = orthogonal_complement(data.t_embedding)
    isometry = find_isometry(data.M, t_perp.sub)
    result = {
        "determinant": determinant(lattice),
        "signature": list(signature(lattice)),
        "odd": not is_even(lattice),
        "complement_of_M_is_T": m_perp.same_image(data.t_embedding),
        "complement_of_T_is_M": t_perp.same_image(data.m_embedding),
        "M_primitive": is_primitive(data.m_embedding),
        "T_primitive": is_primitive(data.t_embedding),
        "complement_of_T_isometric_to_M": isometry is not None,
        "h2_characteristic": h2_is_characteristic(data),
    }
    result["passed"] = (
        abs(result["determinant"]) == 1
        and result["signature"] == [21, 2, 0]
        and all(v for k, v in result.items() if k not in ("determinant", "signature"))
    )
    return result


def transported_s_beta():
    """The induced s*_beta_i moved to A_T through the gluing."""
    data = realize_Lambda()
    induced = [induced_action(data.M, data.m_form, m) for m in s_beta_matrices()]
    return [transport(images, data.anti_isometry, data.m_form, data.t_form) for images in induced]


def verify_weyl_action(cap=None):
    form = t_form()
    generators = transported_s_beta()
    preserved = all(is_morphism(form, form, images) for images in generators)
    generated = orthogonal_group(form, generators, cap=cap).order
    full = orthogonal_group(form, cap=cap).order
    return {
        "passed": preserved and generated == full == 51840,
        "preserve_q": preserved,
        "generated_order": generated,
        "full_order": full,
    }


def verify_e6_quotient():
    form = quotient_form_E6()
    classes = {form.reduce(v.coords) for v in roots_of(standard_lattice("E6"))}
    nonzero = {x for x in form.elements if form.q(x) == 1}
    witness = isometry_search(form, t_form())
    return {
        "passed": classes == nonzero and len(classes) == TANGENTIAL_CLASSES and witness is not None,
        "root_classes": len(classes),
        "distribution": {str(k): v for k, v in value_distribution(form).items()},
        "isometric_to_q_T": witness is not None,
    }


# vectors in T


class VectorTypeLabel(NamedTuple):
    label: str
    norm: int
    divisibility: int
    primitive: bool
    v_hat: tuple
    q_value: Fraction

    def to_json(self):
        return {
            "label": self.label,
            "norm": self.norm,
            "divisibility": self.divisibility,
            "primitive": self.primitive,
            "v_hat": list(self.v_hat),
            "q": str(self.q_value),
        }


def classify_vector(v):
    """Type of a vector of T together with its orbit invariant (v^2, v/div in A_T)."""
    if v.is_zero():
        raise ZeroVector("cannot classify the zero vector")
    form = t_form()
    norm = v.norm()
    div = divisibility(v)
    primitive = v.is_primitive()
    v_hat = form.presentation.coordinates([Fraction(x, div) for x in v.coords])
    q_value = form.q(v_hat)
    if primitive and norm == 2 and div == 1:
        label = NODAL
    elif primitive and norm == 4 and div == 2:
        label = TANGENTIAL
    else:
        label = OTHER
    return VectorTypeLabel(label, norm, div, primitive, tuple(v_hat), q_value)


def tangential_representatives(T=None):
    T = T or build_T()
    pairs = [(1, 3), (1, 4), (3, 4)]

    def pair(prefix, i, j):
        return T.combination(**{f"{prefix}{i}": 1, f"{prefix}{j}": 1})

    singles = [pair(prefix, i, j) for prefix in D4_PREFIXES for i, j in pairs]
    hyperbolic = T.combination(e1=2, f1=-2)
    triples = [
        hyperbolic + pair("a", *p) + pair("b", *r) + pair("c", *s)
        for p, r, s in itertools.product(pairs, repeat=3)
    ]
    return singles + triples


def type2_orbit_census():
    form = t_form()
    labels = [classify_vector(v) for v in tangential_representatives()]
    v_hats = {label.v_hat for label in labels}
    nonzero = {x for x in form.elements if form.q(x) == 1}
    classes = orbit(form, transported_s_beta(), next(iter(sorted(nonzero))))
    return {
        "passed": (
            len(labels) == TANGENTIAL_CLASSES
            and all(x.label == TANGENTIAL for x in labels)
            and v_hats == nonzero
            and len(v_hats) == TANGENTIAL_CLASSES
            and set(classes) == nonzero
        ),
        "representatives": len(labels),
        "distinct_v_hat": len(v_hats),
        "orbit_size": len(classes),
    }


def eichler_spot_check(seed=None, count=100, word_length=20):
    """Reflections in norm +-2 vectors of T keep the type and the class v/div.

    Each trial also reflects in a tangential vector t. That reflection keeps the
    type and q but moves the class by the induced reflection x -> x - 2b(x, t/2) t/2.
    """
    seed = get_setting("SEED") if seed is None else seed
    rng = random.Random(seed)
    T = build_T()
    form = t_form()
    mirrors = [T.basis_vector(f"{p}{i}") for p in D4_PREFIXES for i in range(1, 5)]
    mirrors += [T.combination(e1=1, f1=1), T.combination(e1=1, f1=-1)]
    mirrors += [T.combination(e2=1, f2=1), T.combination(e2=1, f2=-1)]
    tangential = tangential_representatives(T)
    bases = [T.combination(e1=1, f1=1), T.basis_vector("a2")] + tangential

    def reflect(x, u):
        return T.vector([int(c) for c in (x - u * Fraction(2 * x.dot(u), u.norm())).coords])

    def word(x):
        for _ in range(word_length):
            x = reflect(x, rng.choice(mirrors))
        return x

    failures = tangential_failures = 0
    for _ in range(count):
        v = word(rng.choice(bases))
        w = word(v)
        before, after = classify_vector(v), classify_vector(w)
        if before != after:
            failures += 1
            logger.warning("reflection word changed %s into %s", before, after)
        t = rng.choice(tangential)
        c = classify_vector(t).v_hat
        moved = classify_vector(reflect(w, t))
        shift = int(2 * form.b(after.v_hat, c))
        expected = form.add(after.v_hat, tuple(shift * x for x in c))
        if moved != after._replace(v_hat=expected):
            tangential_failures += 1
            logger.warning("tangential reflection in %s sent %s to %s", t, after, moved)
    return {
        "passed": failures == 0 and tangential_failures == 0,
        "seed": seed,
        "vectors": count,
        "word_length": word_length,
        "failures": failures,
        "tangential_failures": tangential_failures,
    }


# T inside the even unimodular lattice of signature (26, 2)


# images of the D4 simple roots a1, a2, a3, a4 among the E8 simple roots
D4_IN_E8 = (3, 4, 5, 2)
E8_HIGHEST_ROOT = (2, 3, 4, 6, 5, 4, 3, 2)
DELTA_PRIME = (2, 2, 3, 4, 3, 2, 1, 0)
E8_TAGS = ("u", "v", "w")


def build_II262():
    pieces = [relabel(standard_lattice("U"), ["e1", "f1"]), relabel(standard_lattice("U"), ["e2", "f2"])]
    for tag in E8_TAGS:
        pieces.append(relabel(standard_lattice("E8"), [f"{tag}{i}" for i in range(1, 9)]))
    return direct_sum(*pieces)


def _e8_vector(factor, coefficients):
    coords = [0] * 28
    offset = 4 + 8 * factor
    coords[offset : offset + 8] = list(coefficients)
    return coords


def _unit(i):
    return [int(j == i - 1) for j in range(8)]


def d4_complement_basis(factor):
    """delta7, delta8, minus the highest root and delta' in one E8 factor."""
    return [
        _e8_vector(factor, _unit(7)),
        _e8_vector(factor, _unit(8)),
        _e8_vector(factor, [-x for x in E8_HIGHEST_ROOT]),
        _e8_vector(factor, DELTA_PRIME),
    ]


@dataclass(frozen=True)
class TEmbedding:
    ambient: object
    embedding: LatticeEmbedding
    complement: LatticeEmbedding
    inverse_basis: tuple

    def decompose(self, coords):
        """Coefficients of ``coords`` in the basis (T images, complement basis)."""
        return [sum(c * row[j] for c, row in zip(coords, self.inverse_basis)) for j in range(len(self.inverse_basis))]


@functools.cache
def embed_T_in_II262():
    II, T = build_II262(), build_T()
    images = []
    for i, label in enumerate(T.labels):
        if i < 4:
            images.append(tuple(int(j == i) for j in range(28)))
            continue
        factor, k = D4_PREFIXES.index(label[0]), int(label[1:])
        images.append(tuple(_e8_vector(factor, _unit(D4_IN_E8[k - 1]))))
    embedding = LatticeEmbedding(T, II, tuple(images))
    rows = [row for factor in range(3) for row in d4_complement_basis(factor)]
    complement = LatticeEmbedding(
        make_lattice([f"{tag}{i}" for tag in E8_TAGS for i in range(1, 5)], linalg.gram_of(II.matrix, rows)),
        II,
        tuple(tuple(r) for r in rows),
    )
    basis = [list(x) for x in images] + rows
    inverse = tuple(tuple(row) for row in linalg.inverse(basis))
    return TEmbedding(II, embedding, complement, inverse)


def verify_T_embedding():
    data = embed_T_in_II262()
    computed = orthogonal_complement(data.embedding)
    d4 = standard_lattice("D4")
    factor_grams = []
    for factor in range(3):
        rows = d4_complement_basis(factor)
        gram = make_lattice(None, linalg.gram_of(data.ambient.matrix, rows))
        factor_grams.append(find_isometry(d4, gram) is not None)
    roots = root_count(data.complement.sub)
    return {
        "passed": (
            computed.same_image(data.complement)
            and all(factor_grams)
            and is_primitive(data.embedding)
            and roots == 72
            and data.ambient.rank == 28
            and abs(determinant(data.ambient)) == 1
        ),
        "complement_matches": computed.same_image(data.complement),
        "factors_isometric_to_D4": factor_grams,
        "T_primitive": is_primitive(data.embedding),
        "complement_roots": roots,
    }


class DeltaClassification(NamedTuple):
    m: int
    nu: LatticeVector
    saturation_roots: int
    vanishing_order: Fraction
    coefficient: Fraction
    label: str

    def to_json(self):
        return {
            "m": self.m,
            "nu": str(self.nu),
            "saturation_roots": self.saturation_roots,
            "vanishing_order": str(self.vanishing_order),
            "coefficient": str(self.coefficient),
            "label": self.label,
        }


def _acts_trivially_on_discriminant(nu):
    reflection = reflection_matrix(nu)
    if not reflection.integral:
        return False
    form = t_form()
    images = induced_action(nu.home, form, reflection.matrix)
    return all(
        image == tuple(int(i == j) for j in range(form.rank)) for i, image in enumerate(images)
    )


def classify_root_delta(delta):
    """Contribution of a root of II_{26,2} to the quasi-pullback of the Borcherds form."""
    data = embed_T_in_II262()
    II = data.ambient
    if not isinstance(delta, LatticeVector):
        delta = II.vector(delta)
    if delta.norm() != 2:
        raise NotARoot(f"{delta} has norm {delta.norm()}, not 2")
    coefficients = data.decompose(delta.coords)
    t_part = coefficients[:16]
    if not any(t_part):
        raise NotARoot(f"{delta} is a root of the complement of T")
    m = linalg.common_denominator(coefficients)
    if m not in (1, 2, 4):
        raise LatticeError(f"{delta} needs denominator {m}")
    nu = data.embedding.sub.vector(linalg.primitive_part(t_part))

    rows = [list(delta.coords)] + data.complement.rows
    gram = linalg.gram_of(II.matrix, rows)
    if linalg.symmetric_signature(gram)[0] != len(rows):
        raise NotPositiveDefiniteSpan(f"{delta} and the complement of T span an indefinite lattice")
    saturated = saturate_rows(rows, II.rank)
    roots = root_count(make_lattice(None, linalg.gram_of(II.matrix, saturated)))
    vanishing = Fraction(roots - root_count(data.complement.sub), 2)
    coefficient = vanishing / 2 if _acts_trivially_on_discriminant(nu) else vanishing
    return DeltaClassification(m, nu, roots, vanishing, coefficient, classify_vector(nu).label)


def nodal_witness_root():
    data = embed_T_in_II262()
    T = data.embedding.sub
    return data.embedding.image_of(T.combination(e1=1, f1=1).coords)


def tangential_witness_root(factor=0, pair=(1, 3)):
    """A root of one E8 factor whose nu is +-(x_i + x_j) in the D4 copy of that factor."""
    data = embed_T_in_II262()
    T = data.embedding.sub
    prefix = D4_PREFIXES[factor]
    i, j = pair
    target = list(T.combination(**{f"{prefix}{i}": 1, f"{prefix}{j}": 1}).coords)
    negated = [-x for x in target]
    for root in roots_of(standard_lattice("E8")):
        delta = data.ambient.vector(_e8_vector(factor, root.coords))
        t_part = data.decompose(delta.coords)[:16]
        if any(t_part) and linalg.primitive_part(t_part) in (target, negated):
            return delta
    raise LatticeError(f"no root of E8 factor {factor} projects onto {prefix}{i} + {prefix}{j}")


@functools.cache
def tangential_class_coefficients():
    """Quasi-pullback coefficient for each tangential class met by the roots of a single E8 factor."""
    coefficients = {}
    for factor in range(len(D4_PREFIXES)):
        for pair in ((1, 3), (1, 4), (3, 4)):
            found = classify_root_delta(tangential_witness_root(factor, pair))
            coefficients[classify_vector(found.nu).v_hat] = found.coefficient
    return coefficients


class BorcherdsRelationReport(NamedTuple):
    weight: int
    star_coefficients: tuple
    plus_relation: tuple
    ramification_divisor: int
    tangential_classes: int

    def to_json(self):
        return {
            "weight": self.weight,
            "star_coefficients": [str(x) for x in self.star_coefficients],
            "plus_relation": [str(x) for x in self.plus_relation],
            "ramification_divisor": self.ramification_divisor,
            "tangential_classes": self.tangential_classes,
        }


def borcherds_relation():
    data = embed_T_in_II262()
    weight = 12 + root_count(data.complement.sub) // 2
    nodal = classify_root_delta(nodal_witness_root())
    coefficients = tangential_class_coefficients()
    if len(set(coefficients.values())) != 1:
        raise LatticeError(f"tangential classes carry different coefficients {sorted(set(coefficients.values()))}")
    if type2_orbit_census()["orbit_size"] != TANGENTIAL_CLASSES:
        raise LatticeError("tangential classes do not form a single orbit")
    # one orbit, so every one of the 36 classes carries the common coefficient
    tangential = sum(coefficients.values()) / len(coefficients)
    star = (nodal.coefficient, tangential)
    plus = (nodal.coefficient, tangential / RAMIFICATION_ORDER)
    scale = 1 / plus[0]
    return BorcherdsRelationReport(
        weight, star, (plus[0] * scale, plus[1] * scale), RAMIFICATION_ORDER, len(coefficients)
    )


def bruinier_sum_check():
    value = 64 + Fraction(64 * 8, 12) - 18 - Fraction(65, 3) - 18 - 28
    return {"passed": value == 21, "value": str(value), "picard_rank": int(value) + 1}


# classes x with x^2 = 1 and x.h^2 = 1 that would meet M in a positive definite lattice


def _positive_definite(matrix):
    return linalg.symmetric_signature(matrix)[0] == len(matrix)


def admissible_pairings(span=range(-6, 7)):
    """Values of x.F_i (i >= 1) and x.F0 allowed by positive definiteness."""
    with_fi = [t for t in span if _positive_definite([[3, 1, 1], [1, 1, t], [1, t, 3]])]
    with_f0 = [s for s in span if _positive_definite([[3, 1, 3], [1, 1, s], [3, s, 7]])]
    return with_f0, with_fi


def h_infinity_avoidance():
    M = build_M()
    with_f0, with_fi = admissible_pairings()
    candidates = []
    for s in with_f0:
        for t in itertools.product(with_fi, repeat=6):
            if 3 * s - sum(t) != 1:
                continue
            pairings = [s, *t]
            gram = [row + [p] for row, p in zip(M.matrix, pairings)] + [pairings + [1]]
            candidates.append({"x.F": pairings, "determinant": linalg.determinant(gram)})
    return {
        "passed": (
            with_f0 == [0, 1, 2]
            and with_fi == [0, 1]
            and len(candidates) == 21
            and all(c["determinant"] == 0 for c in candidates)
        ),
        "x.F0": with_f0,
        "x.Fi": with_fi,
        "candidates": len(candidates),
    }
