"""Acceptance suites: structured algorithms checked against brute-force oracles.

Each suite returns a ``SuiteResult`` counting the checks it made and listing
a witness for every failed check. ``quick=True`` shrinks the corpora.
"""

from __future__ import annotations

import itertools
import logging
import random
from typing import Callable, Optional

from pydantic import BaseModel, Field

from semicat.core.exceptions import ConditionViolatedError, DiagramFailsError, NotAutomorphismError, UnknownCommandError
from semicat.core.finsemi import (
    BandAutomorphism,
    RectangularBand,
    brute_force_isomorphisms,
    green_H,
    rb_extension_automorphism,
)
from semicat.core.groups import cyclic_group, group_direct_product
from semicat.core.orbits import (
    burnside_profile,
    from_generators,
    from_maps,
    oligomorphy_profile,
    pivoted_prc_check,
    psi_system_check,
    symmetric_group,
    union_find_profile,
)
from semicat.core.rees import (
    ReesMatrixSemigroup,
    counterexample_family,
    decompose_components,
    graham_normalize,
    is_orthodox,
    rees_idempotents,
    spanning_forest,
)
from semicat.core.reesiso import (
    compose_iso,
    component_psi_system,
    element_map,
    enumerate_isos,
    invert_iso,
    validate_iso,
)
from semicat.core.semilat import (
    SssAutomorphism,
    is_automorphism_pure,
    sss_automorphisms,
    sss_build_automorphism,
    sss_flat_automorphism,
)
from semicat.schema.config import AnalysisConfig
from semicat.utils.tables import compose_maps, invert_map, is_homomorphism
from semicat.verify.corpus import (
    DEFAULT_SEED,
    all_regular_matrices,
    rees_corpus,
    scrambled_copy,
    sss_catalogue,
)
from semicat.vars.limits import DEFAULT_LIMITS
from semicat.vars.suites import ALL_SUITES, SUITES

logger = logging.getLogger(__name__)

# Failure witnesses kept per suite; the count of failed checks is always exact
MAX_WITNESSES = 20

BELL_NUMBERS = (1, 2, 5, 15)


class SuiteResult(BaseModel):
    """Outcome of one verification suite.

    Attributes:
        name (str): Suite name
        description (str): What the suite establishes
        passed (bool): True iff every check held
        checked (int): Number of checks made
        failed (int): Number of failed checks
        failures (list[str]): Witnesses of the first failures
        details (dict): Suite-specific findings
    """

    name: str
    description: str = ""
    passed: bool = True
    checked: int = 0
    failed: int = 0
    failures: list[str] = Field(default_factory=list)
    details: dict = Field(default_factory=dict)

    def check(self, holds: bool, witness: str) -> bool:
        """Record one check, keeping ``witness`` if it failed."""
        self.checked += 1
        if not holds:
            self.passed = False
            self.failed += 1
            if len(self.failures) < MAX_WITNESSES:
                self.failures.append(witness)
        return holds


def _result(name: str) -> SuiteResult:
    return SuiteResult(name=name, description=SUITES[name])


def _oracle_order(config: AnalysisConfig) -> int:
    return max(config.max_order, DEFAULT_LIMITS["oracle_order"])


def _maps(isos: list) -> list[tuple[int, ...]]:
    return [element_map(iso) for iso in isos]


def iso_theorem(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Structured enumeration equals the brute-force isomorphism search on every corpus pair.

    Each instance is paired with itself, with a scrambled isomorphic copy and
    with the next instance of the same group and shape.
    """
    config = config or AnalysisConfig()
    result = _result("iso-theorem")
    rng = random.Random(DEFAULT_SEED)
    corpus = rees_corpus(quick=quick)
    pairs: list[tuple[str, ReesMatrixSemigroup, ReesMatrixSemigroup]] = []
    for k, instance in enumerate(corpus):
        semigroup = instance.semigroup
        copy, _ = scrambled_copy(rng, semigroup)
        pairs.append((f"{instance.name} ~ itself", semigroup, semigroup))
        pairs.append((f"{instance.name} ~ scrambled copy", semigroup, copy))
        if k + 1 < len(corpus):
            neighbour = corpus[k + 1]
            pairs.append((f"{instance.name} ~ {neighbour.name}", semigroup, neighbour.semigroup))

    for label, source, target in pairs:
        structured = _maps(enumerate_isos(source, target, max_isomorphisms=config.max_isomorphisms))
        oracle = brute_force_isomorphisms(source.as_semigroup, target.as_semigroup, max_order=_oracle_order(config))
        result.check(structured == oracle, f"{label}: structured {len(structured)} maps, brute force {len(oracle)}")
    result.details = {"instances": len(corpus), "pairs": len(pairs)}
    return result


def calculus(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """compose_iso and invert_iso agree pointwise with composing and inverting element maps."""
    config = config or AnalysisConfig()
    result = _result("calculus")
    rng = random.Random(DEFAULT_SEED + 1)
    per_instance = 6 if quick else 12
    for instance in rees_corpus(quick=quick):
        semigroup = instance.semigroup
        if semigroup.order > 27:
            continue
        copy, onto_copy = scrambled_copy(rng, semigroup)
        automorphisms = enumerate_isos(semigroup, semigroup, max_isomorphisms=config.max_isomorphisms)
        sample = automorphisms if len(automorphisms) <= per_instance else rng.sample(automorphisms, per_instance)

        for first, second in itertools.product(sample, repeat=2):
            composite = compose_iso(first, second)
            result.check(
                element_map(composite) == compose_maps(element_map(first), element_map(second)),
                f"{instance.name}: composite of {first.to_dict()} and {second.to_dict()} differs pointwise",
            )
        for first, second in zip(sample, sample[1:]):
            triple = compose_iso(compose_iso(first, second), onto_copy)
            expected = compose_maps(compose_maps(element_map(first), element_map(second)), element_map(onto_copy))
            result.check(element_map(triple) == expected, f"{instance.name}: triple composite into the copy differs")
            result.check(validate_iso(semigroup, copy, triple).valid, f"{instance.name}: triple composite fails validation")
        for iso in [*sample, onto_copy]:
            inverse = invert_iso(iso)
            result.check(
                element_map(inverse) == invert_map(element_map(iso)),
                f"{instance.name}: inverse of {iso.to_dict()} differs pointwise",
            )
            result.check(
                validate_iso(iso.target, iso.source, inverse).valid,
                f"{instance.name}: inverse of {iso.to_dict()} fails validation",
            )
    return result


def idempotents(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """The closed idempotent formula matches the ``x*x = x`` scan."""
    result = _result("idempotents")
    for instance in rees_corpus(quick=quick):
        formula = rees_idempotents(instance.semigroup)
        scan = instance.semigroup.as_semigroup.idempotents
        result.check(formula == scan, f"{instance.name}: formula {sorted(formula)} vs scan {sorted(scan)}")
    return result


def orthodoxy(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Orthodox iff the normalized matrix is trivial and every component of Gamma(P) is complete."""
    result = _result("orthodoxy")
    largest = 2 if quick else 3
    orthodox_count = 0
    for order in (1, 2):
        group = cyclic_group(order)
        for rows, cols in itertools.product(range(1, largest + 1), repeat=2):
            for semigroup in all_regular_matrices(group, rows, cols):
                normalized, _ = graham_normalize(semigroup)
                trivial = all(normalized.matrix.entry(lam, i) == group.identity for lam, i in normalized.matrix.nonzero())
                complete = all(
                    component.graph.edge_count == len(component.left) * len(component.right)
                    for component in decompose_components(semigroup).components
                )
                orthodox = is_orthodox(semigroup)
                orthodox_count += orthodox
                result.check(
                    orthodox == (trivial and complete),
                    f"Z{order} matrix {semigroup.matrix.entries}: orthodox={orthodox}, trivial={trivial}, complete={complete}",
                )
    result.details = {"orthodox": orthodox_count}
    return result


def normalization(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Graham normal forms are isomorphic to the original and trivial on the spanning forest."""
    result = _result("normalization")
    for instance in rees_corpus(quick=quick):
        semigroup = instance.semigroup
        normalized, iso = graham_normalize(semigroup)
        check = validate_iso(semigroup, normalized, iso)
        result.check(check.valid, f"{instance.name}: gauge fails at {check.witness} ({check.reason})")
        for parent, child in spanning_forest(semigroup).edges:
            i, lam = (parent, child) if parent.side == "L" else (child, parent)
            entry = normalized.matrix.entry(lam.index, i.index)
            result.check(
                entry == semigroup.group.identity,
                f"{instance.name}: tree edge ({i.index}, {lam.index}) normalizes to {entry}",
            )
    return result


def orbits(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Burnside and union-find agree; trivial groups give ``m^n``; Sym(m) gives Bell numbers."""
    config = config or AnalysisConfig()
    result = _result("orbits")
    n_max = 3
    for instance in rees_corpus(quick=quick):
        semigroup = instance.semigroup
        if semigroup.order > 15:
            continue
        maps = _maps(enumerate_isos(semigroup, semigroup, max_isomorphisms=config.max_isomorphisms))
        group = from_maps(maps, semigroup.order)
        burnside = burnside_profile(group, n_max)
        union_find = union_find_profile(group, n_max, config.max_tuples)
        result.check(
            burnside.counts == union_find.counts,
            f"{instance.name}: Burnside {list(burnside.counts)} vs union-find {list(union_find.counts)}",
        )

    for m in range(1, 6):
        trivial = from_generators([], degree=m)
        counts = oligomorphy_profile(trivial, n_max, method="union-find").counts
        result.check(counts == tuple(m**n for n in range(1, n_max + 1)), f"trivial group on {m} points: {list(counts)}")
    for m in range(n_max, 6):
        counts = oligomorphy_profile(symmetric_group(m), n_max, method="both").counts
        result.check(counts == BELL_NUMBERS[:n_max], f"Sym({m}): {list(counts)}, expected Bell numbers")
    return result


def _bijections(size: int, target_size: int) -> list[tuple[int, ...]]:
    if size != target_size:
        return []
    return list(itertools.permutations(range(size)))


def strong_semilattice(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """sss_build_automorphism accepts exactly the data whose flat map is multiplicative."""
    result = _result("strong-semilattice")
    accepted = 0
    for entry in sss_catalogue(quick=quick):
        semilattice = entry.semilattice
        flat = semilattice.flatten
        parts = semilattice.components
        for pi in itertools.permutations(semilattice.lattice.elements):
            options = [_bijections(parts[alpha].order, parts[pi[alpha]].order) for alpha in range(len(parts))]
            for thetas in itertools.product(*options):
                candidate = SssAutomorphism(tuple(pi), tuple(thetas))
                phi = sss_flat_automorphism(semilattice, candidate)
                multiplicative = is_homomorphism(flat.table, flat.table, phi)
                try:
                    sss_build_automorphism(semilattice, pi, thetas)
                    taken = True
                except (DiagramFailsError, NotAutomorphismError):
                    taken = False
                accepted += taken
                result.check(
                    taken == multiplicative,
                    f"{entry.name}: pi={list(pi)} thetas={[list(t) for t in thetas]} accepted={taken}, multiplicative={multiplicative}",
                )
    result.details = {"accepted": accepted}
    return result


def purity(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Clifford semigroups and normal bands in the catalogue are automorphism-pure.

    For every entry, the component-wise automorphisms together with the
    non-decomposing witnesses must be exactly the flat automorphisms.
    """
    config = config or AnalysisConfig()
    result = _result("purity")
    impure = 0
    for entry in sss_catalogue(quick=quick):
        semilattice = entry.semilattice
        flat = semilattice.flatten
        report = is_automorphism_pure(semilattice, max_order=_oracle_order(config))
        impure += not report.pure
        oracle = set(brute_force_isomorphisms(flat, flat, max_order=_oracle_order(config)))
        found = {sss_flat_automorphism(semilattice, a) for a in sss_automorphisms(semilattice, max_order=_oracle_order(config))}
        result.check(
            found | set(report.witnesses) == oracle and not found & set(report.witnesses),
            f"{entry.name}: {len(found)} component-wise and {len(report.witnesses)} other automorphisms, oracle has {len(oracle)}",
        )
        if entry.family in ("group", "band"):
            result.check(
                report.pure,
                f"{entry.name}: {len(report.witnesses)} of {report.automorphisms} automorphisms do not decompose",
            )
    result.details = {"impure": impure}
    return result


def psi_system(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Component Psi-systems pass all four conditions; (H_e, e) and (S_alpha, x_alpha) are p.r.c."""
    config = config or AnalysisConfig()
    result = _result("psi-system")
    for instance in rees_corpus(quick=quick):
        semigroup = instance.semigroup
        if semigroup.order > 12:
            continue
        automorphisms = _maps(enumerate_isos(semigroup, semigroup, max_isomorphisms=config.max_isomorphisms))
        system = component_psi_system(semigroup)
        report = psi_system_check(
            system.semigroup,
            system.family,
            system.partition,
            system.maps,
            automorphisms=automorphisms,
            max_choices=config.max_choices,
        )
        result.check(
            report.passed,
            f"{instance.name}: " + "; ".join(f"{f.condition}: {f.detail}" for f in report.failures[:3]),
        )

        flat = semigroup.as_semigroup
        h_classes = {x: h_class for h_class in green_H(flat) for x in h_class}
        pairs = [(h_classes[e], (e,)) for e in sorted(flat.idempotents)]
        prc = pivoted_prc_check(flat, pairs, automorphisms=automorphisms)
        result.check(prc.holds, f"{instance.name}: (H_e, e) fails with witness {prc.witness}")

    for entry in sss_catalogue(quick=quick):
        semilattice = entry.semilattice
        if not is_automorphism_pure(semilattice, max_order=_oracle_order(config)).pure:
            continue
        pairs = [(semilattice.component_elements(alpha), (semilattice.offsets[alpha],)) for alpha in semilattice.lattice.elements]
        prc = pivoted_prc_check(semilattice.flatten, pairs, max_order=_oracle_order(config))
        result.check(prc.holds, f"{entry.name}: (S_alpha, x_alpha) fails with witness {prc.witness}")
    return result


def _fixes(automorphism: BandAutomorphism, subband: frozenset[tuple[int, int]]) -> bool:
    return frozenset(automorphism(pair) for pair in subband) == subband


def _subrectangles(band: RectangularBand) -> list[frozenset[tuple[int, int]]]:
    def nonempty_subsets(size: int) -> list[tuple[int, ...]]:
        return [combo for k in range(1, size + 1) for combo in itertools.combinations(range(size), k)]

    return [
        frozenset(itertools.product(left, right))
        for left in nonempty_subsets(band.left_size)
        for right in nonempty_subsets(band.right_size)
    ]


def rb_extension(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Extensions fix every subband and the matching; a check fails exactly when no extension exists."""
    result = _result("rb-extension")
    rng = random.Random(DEFAULT_SEED + 2)
    largest = 3 if quick else 4
    configurations = 4 if quick else 8
    matchings = 4 if quick else 8
    extended = 0
    for left_size, right_size in itertools.product(range(1, largest + 1), repeat=2):
        band = RectangularBand(left_size, right_size)
        pool = _subrectangles(band)
        everything = [
            BandAutomorphism(band, left, right)
            for left in itertools.permutations(range(left_size))
            for right in itertools.permutations(range(right_size))
        ]
        elements = [band.pair(x) for x in range(band.order)]
        for _ in range(configurations):
            subbands = rng.sample(pool, min(len(pool), rng.randint(0, 3)))
            stabilizer = [phi for phi in everything if all(_fixes(phi, subband) for subband in subbands)]
            for _ in range(matchings):
                length = rng.randint(0, 2)
                partial = [(rng.choice(elements), rng.choice(elements)) for _ in range(length)]
                exists = any(all(phi(a) == b for a, b in partial) for phi in stabilizer)
                label = f"{left_size}x{right_size} subbands={[sorted(s) for s in subbands]} partial={partial}"
                try:
                    automorphism = rb_extension_automorphism(band, subbands, partial)
                except ConditionViolatedError as e:
                    result.check(not exists, f"{label}: condition ({e.condition}) rejected an extendable matching")
                    continue
                extended += 1
                result.check(exists, f"{label}: accepted a matching no automorphism extends")
                result.check(all(_fixes(automorphism, s) for s in subbands), f"{label}: a subband is moved")
                result.check(all(automorphism(a) == b for a, b in partial), f"{label}: the matching is not extended")
    result.details = {"extended": extended}
    return result


def counterexample(quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Isomorphism pattern of the truncated diagonal family over Z2 x Z2, computed two ways.

    The pattern is recorded as found; only agreement between the methods is checked.
    """
    config = config or AnalysisConfig()
    result = _result("counterexample")
    z2 = cyclic_group(2)
    group = group_direct_product(z2, z2)
    n = 3 if quick else 4
    ks = range(3) if quick else range(4)
    members = {k: counterexample_family(group, k, n) for k in ks}
    structured_pattern = []
    oracle_pattern = []
    for k in ks:
        structured_row, oracle_row = [], []
        for l in ks:
            structured = bool(enumerate_isos(members[k], members[l], limit=1))
            oracle = bool(
                brute_force_isomorphisms(
                    members[k].as_semigroup,
                    members[l].as_semigroup,
                    max_order=_oracle_order(config),
                    limit=1,
                ),
            )
            result.check(structured == oracle, f"k={k}, l={l}: structured={structured}, brute force={oracle}")
            structured_row.append(structured)
            oracle_row.append(oracle)
        structured_pattern.append(structured_row)
        oracle_pattern.append(oracle_row)
    result.details = {"n": n, "k": list(ks), "pattern": structured_pattern}
    return result


SUITE_RUNNERS: dict[str, Callable[..., SuiteResult]] = {
    "iso-theorem": iso_theorem,
    "calculus": calculus,
    "idempotents": idempotents,
    "orthodoxy": orthodoxy,
    "normalization": normalization,
    "orbits": orbits,
    "strong-semilattice": strong_semilattice,
    "purity": purity,
    "psi-system": psi_system,
    "rb-extension": rb_extension,
    "counterexample": counterexample,
}


def run_suite(name: str, quick: bool = False, config: Optional[AnalysisConfig] = None) -> SuiteResult:
    """Run one suite by name.

    Raises:
        UnknownCommandError: If no suite has that name
    """
    runner = SUITE_RUNNERS.get(name)
    if runner is None:
        msg = f"Unknown suite {name!r}, expected one of: {', '.join(ALL_SUITES)}"
        raise UnknownCommandError(msg)
    logger.info("Running suite %s%s", name, " (quick)" if quick else "")
    result = runner(quick=quick, config=config)
    logger.info("Suite %s: %d checks, %d failed", name, result.checked, result.failed)
    return result


def run_suites(names: list[str], quick: bool = False, config: Optional[AnalysisConfig] = None) -> list[SuiteResult]:
    """Run suites in order; ``all`` stands for every suite."""
    expanded = list(ALL_SUITES) if "all" in names else names
    return [run_suite(name, quick=quick, config=config) for name in expanded]
