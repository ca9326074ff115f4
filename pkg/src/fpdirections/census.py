"""Instance enumeration, censuses, counterexample hunting, and classification.

An EnumerationPlan pins down an instance stream exactly: same plan, same
stream, byte for byte, regardless of how many worker chunks execute it.
Exhaustive streams walk lexicographic ranks; sampled streams draw each
instance from counters derived from (seed, global index), so chunk
boundaries cannot move the sample.

Censuses never materialize their instance streams. They run in blocks
through the numpy kernels, aggregate counts and minimal exemplars, and
re-check any kernel-flagged violation through the pure checkers before
reporting it; a disagreement between the two routes is a hard error, not a
report.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .checkers import (
    CheckReport,
    check_dsw_product,
    check_gacs_gap,
    check_kiss_somlai,
    check_main,
    check_parity_identity,
    check_projection_support,
    check_proposition,
    check_redei,
    check_sum_criterion,
    check_szonyi,
)
from .errors import GuardError
from .fp import PrimeModulus
from .plane import PointSet, cells_to_grid_hex, direction_set
from .poly import Polynomial, one_plus_legendre

DEFAULT_SEED = 0x5EED

TARGETS = ("functions", "point_sets", "polynomials_half_degree", "product_sets")
MODES = ("exhaustive", "sampled")

# Hard feasibility guards; exceeding one raises GuardError instead of running.
FUNCTIONS_EXHAUSTIVE_MAX_P = 7
SUBSETS_EXHAUSTIVE_MAX_COUNT = 10**8
SUBSETS_SAMPLED_MAX_P = 31
POLY_CLASSIFY_MAX_P = 13
SET_CLASSIFY_MAX_P = 7
PRODUCTS_EXHAUSTIVE_MAX_P = 7

_SUBSET_BLOCK = 1 << 18
_SAMPLED_SUBSET_BLOCK = 1 << 16
_FUNCTION_BLOCK = 1 << 17

STATEMENT_TARGETS = {
    "main": "functions",
    "proposition": "functions",
    "parity_identity": "functions",
    "sum_criterion": "functions",
    "redei": "point_sets",
    "kiss_somlai": "point_sets",
    "projection_support": "point_sets",
    "szonyi": "point_sets",
    "gacs_gap": "point_sets",
    "dsw_product": "product_sets",
}


@dataclass(frozen=True)
class EnumerationPlan:
    """A reproducible instance stream: what to enumerate and how."""

    modulus: PrimeModulus
    target: str
    mode: str
    sample_count: int = 0
    seed: int = DEFAULT_SEED
    worker_chunks: int = 1

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "sampled" and self.sample_count < 1:
            raise ValueError("sampled plans need sample_count >= 1")
        if self.worker_chunks < 1:
            raise ValueError("worker_chunks must be >= 1")
        p = self.modulus.p
        if self.mode == "exhaustive":
            if self.target == "functions" and p > FUNCTIONS_EXHAUSTIVE_MAX_P:
                raise GuardError(
                    f"exhaustive function enumeration is limited to p <= "
                    f"{FUNCTIONS_EXHAUSTIVE_MAX_P}, got {p}"
                )
            if self.target == "product_sets" and p > PRODUCTS_EXHAUSTIVE_MAX_P:
                raise GuardError(
                    f"exhaustive product enumeration is limited to p <= "
                    f"{PRODUCTS_EXHAUSTIVE_MAX_P}, got {p}"
                )
        if self.target == "polynomials_half_degree" and p > POLY_CLASSIFY_MAX_P:
            raise GuardError(
                f"half-degree polynomial enumeration is limited to p <= "
                f"{POLY_CLASSIFY_MAX_P}, got {p}"
            )
        if self.target == "point_sets" and self.mode == "sampled" and p > SUBSETS_SAMPLED_MAX_P:
            raise GuardError(
                f"sampled subset censuses are limited to p <= {SUBSETS_SAMPLED_MAX_P}, got {p}"
            )

    @property
    def p(self) -> int:
        return self.modulus.p


def _guard_exhaustive_subsets(p: int, k: int):
    n = p * p
    if not 2 <= k <= n:
        raise ValueError(f"subset cardinality must be in [2, {n}], got {k}")
    total = comb(n, k)
    if total > SUBSETS_EXHAUSTIVE_MAX_COUNT:
        raise GuardError(
            f"C({n},{k}) = {total} exceeds the exhaustive guard of "
            f"{SUBSETS_EXHAUSTIVE_MAX_COUNT}"
        )
    return total


# ---------------------------------------------------------------------------
# Pure instance streams (reference semantics; censuses use the kernels).


def enumerate_functions(
    plan: EnumerationPlan, value_sum: int | None = None
) -> Iterator[Polynomial]:
    """Every function F_p -> F_p (exhaustive) or a seeded uniform sample.

    The optional value_sum filter keeps only tables whose lifted sum matches.
    """
    if plan.target != "functions":
        raise ValueError(f"plan targets {plan.target!r}, not functions")
    p = plan.p
    m = plan.modulus
    if plan.mode == "exhaustive":
        indices = range(p**p)
    else:
        indices = range(plan.sample_count)
    for lo in range(0, len(indices), _FUNCTION_BLOCK):
        idx = np.arange(indices[lo], indices[lo] + min(_FUNCTION_BLOCK, len(indices) - lo), dtype=np.int64)
        if plan.mode == "exhaustive":
            tables = kernels.base_digits(idx, p, p)
        else:
            tables = kernels.sampled_function_tables(plan.seed, idx, p)
        for row in tables:
            if value_sum is not None and int(row.sum()) != value_sum:
                continue
            yield Polynomial.interpolate(m, [int(v) for v in row])


def enumerate_point_sets(plan: EnumerationPlan, k: int) -> Iterator[PointSet]:
    """Every k-subset of AG(2,p) in lexicographic cell order, or a seeded sample."""
    if plan.target != "point_sets":
        raise ValueError(f"plan targets {plan.target!r}, not point_sets")
    p = plan.p
    m = plan.modulus
    n = p * p
    if plan.mode == "exhaustive":
        _guard_exhaustive_subsets(p, k)
        for cells in itertools.combinations(range(n), k):
            yield PointSet.from_cells(m, cells)
    else:
        for lo in range(0, plan.sample_count, _SAMPLED_SUBSET_BLOCK):
            idx = np.arange(lo, min(lo + _SAMPLED_SUBSET_BLOCK, plan.sample_count), dtype=np.int64)
            for row in kernels.sampled_subsets(plan.seed, idx, n, k):
                yield PointSet.from_cells(m, (int(c) for c in row))


def half_degree_polynomial_count(p: int) -> int:
    """(p-1) * p**((p-1)/2): vectors with nonzero leading coefficient."""
    return (p - 1) * p ** ((p - 1) // 2)


def enumerate_half_degree_polynomials(plan: EnumerationPlan) -> Iterator[Polynomial]:
    """Every polynomial of degree exactly (p-1)/2, exhaustively."""
    if plan.target != "polynomials_half_degree":
        raise ValueError(f"plan targets {plan.target!r}, not polynomials_half_degree")
    if plan.mode != "exhaustive":
        raise ValueError("half-degree enumeration is exhaustive only")
    p = plan.p
    h = (p - 1) // 2
    low_count = p**h
    for idx in range(half_degree_polynomial_count(p)):
        low = kernels.base_digits(np.array([idx % low_count], dtype=np.int64), p, h)[0]
        lead = 1 + idx // low_count
        yield Polynomial.from_coefficients(plan.modulus, [int(c) for c in low] + [lead])


def enumerate_products(
    plan: EnumerationPlan,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Factor pairs (A, B) of nonempty subsets of F_p with |A|*|B| >= 2."""
    if plan.target != "product_sets":
        raise ValueError(f"plan targets {plan.target!r}, not product_sets")
    p = plan.p

    def bits(mask):
        return tuple(i for i in range(p) if mask >> i & 1)

    if plan.mode == "exhaustive":
        top = (1 << p) - 1
        for amask in range(1, top + 1):
            for bmask in range(1, top + 1):
                a, b = bits(amask), bits(bmask)
                if len(a) * len(b) >= 2:
                    yield a, b
    else:
        top = (1 << p) - 1
        for i in range(plan.sample_count):
            counters = np.array([2 * i, 2 * i + 1], dtype=np.uint64)
            draws = kernels.stream_u64(plan.seed, counters)
            a = bits(int(draws[0] % top) + 1)
            b = bits(int(draws[1] % top) + 1)
            if len(a) * len(b) >= 2:
                yield a, b


# ---------------------------------------------------------------------------
# Census results and merging.


def _new_tally() -> dict[str, int]:
    return {"pass": 0, "fail": 0, "skip": 0}


@dataclass
class SubsetCensus:
    """Aggregated outcome of a k-subset census."""

    p: int
    k: int
    mode: str
    seed: int
    statements: tuple[str, ...]
    scanned: int = 0
    line_count: int = 0
    direction_histogram: dict[int, int] = field(default_factory=dict)
    exemplars: dict[int, tuple[int, ...]] = field(default_factory=dict)
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[CheckReport] = field(default_factory=list)
    zero_projection_rows: int = 0
    extremal_target: int | None = None
    extremal_cells: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def evidence_grade(self) -> bool:
        return self.mode == "sampled"

    def merge(self, other: SubsetCensus) -> SubsetCensus:
        self.scanned += other.scanned
        self.line_count += other.line_count
        self.zero_projection_rows += other.zero_projection_rows
        for d, c in other.direction_histogram.items():
            self.direction_histogram[d] = self.direction_histogram.get(d, 0) + c
        for d, cells in other.exemplars.items():
            if d not in self.exemplars or cells < self.exemplars[d]:
                self.exemplars[d] = cells
        for s, t in other.tallies.items():
            mine = self.tallies.setdefault(s, _new_tally())
            for key, v in t.items():
                mine[key] += v
        self.failures.extend(other.failures)
        self.extremal_cells.extend(other.extremal_cells)
        return self


@dataclass
class FunctionCensus:
    """Aggregated outcome of a function census."""

    p: int
    mode: str
    seed: int
    statements: tuple[str, ...]
    scanned: int = 0
    sum_p_count: int = 0
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[CheckReport] = field(default_factory=list)
    survivor_degree_histogram: dict[int, int] = field(default_factory=dict)
    min_nonconstant_degree: int | None = None
    sharp_witness_seen: bool = False

    def merge(self, other: FunctionCensus) -> FunctionCensus:
        self.scanned += other.scanned
        self.sum_p_count += other.sum_p_count
        for s, t in other.tallies.items():
            mine = self.tallies.setdefault(s, _new_tally())
            for key, v in t.items():
                mine[key] += v
        self.failures.extend(other.failures)
        for deg, c in other.survivor_degree_histogram.items():
            self.survivor_degree_histogram[deg] = (
                self.survivor_degree_histogram.get(deg, 0) + c
            )
        if other.min_nonconstant_degree is not None:
            if (
                self.min_nonconstant_degree is None
                or other.min_nonconstant_degree < self.min_nonconstant_degree
            ):
                self.min_nonconstant_degree = other.min_nonconstant_degree
        self.sharp_witness_seen = self.sharp_witness_seen or other.sharp_witness_seen
        return self


@dataclass
class ProductCensus:
    """Aggregated outcome of a Cartesian product census."""

    p: int
    mode: str
    seed: int
    scanned: int = 0
    tally: dict[str, int] = field(default_factory=_new_tally)
    skip_reasons: dict[str, int] = field(default_factory=dict)
    failures: list[CheckReport] = field(default_factory=list)


def _split_ranges(total: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, total)) if total else 1
    step, extra = divmod(total, chunks)
    out = []
    lo = 0
    for i in range(chunks):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _run_chunked(worker, common_args: tuple, total: int, worker_chunks: int):
    ranges = _split_ranges(total, worker_chunks)
    if len(ranges) == 1:
        return [worker(*common_args, *ranges[0])]
    max_workers = min(len(ranges), os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        futures = [pool.submit(worker, *common_args, lo, hi) for lo, hi in ranges]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# Subset census.


def _subset_census_chunk(
    plan: EnumerationPlan,
    k: int,
    statements: tuple[str, ...],
    extremal_target: int | None,
    lo: int,
    hi: int,
) -> SubsetCensus:
    p = plan.p
    m = plan.modulus
    n = p * p
    result = SubsetCensus(
        p, k, plan.mode, plan.seed, statements,
        tallies={s: _new_tally() for s in statements},
        extremal_target=extremal_target,
    )
    block = _SUBSET_BLOCK if plan.mode == "exhaustive" else _SAMPLED_SUBSET_BLOCK
    support_bound = "projection_support" in statements
    kiss = "kiss_somlai" in statements

    for start in range(lo, hi, block):
        idx = np.arange(start, min(start + block, hi), dtype=np.int64)
        if plan.mode == "exhaustive":
            cells = kernels.unrank_combinations(idx, n, k)
        else:
            cells = kernels.sampled_subsets(plan.seed, idx, n, k)
        _, d = kernels.direction_masks(cells, p)
        lines = d == 1
        result.scanned += len(idx)
        result.line_count += int(lines.sum())
        hist = np.bincount(d, minlength=p + 2)
        for dv in np.nonzero(hist)[0]:
            dv = int(dv)
            result.direction_histogram[dv] = (
                result.direction_histogram.get(dv, 0) + int(hist[dv])
            )
            row = cells[int(np.argmax(d == dv))]
            cand = tuple(int(c) for c in row)
            if dv not in result.exemplars or cand < result.exemplars[dv]:
                result.exemplars[dv] = cand
        if extremal_target is not None:
            for row in cells[d == extremal_target]:
                result.extremal_cells.append(tuple(int(c) for c in row))

        nonline = ~lines
        violating: dict[str, np.ndarray] = {}
        if "redei" in statements:
            viol = nonline & (2 * d < p + 3)
            violating["redei"] = viol
            t = result.tallies["redei"]
            t["fail"] += int(viol.sum())
            t["pass"] += int(len(idx) - viol.sum())
        if "szonyi" in statements:
            viol = nonline & (2 * d < k + 3)
            violating["szonyi"] = viol
            t = result.tallies["szonyi"]
            t["skip"] += int(lines.sum())
            t["fail"] += int(viol.sum())
            t["pass"] += int(nonline.sum() - viol.sum())
        if support_bound:
            a = kernels.distinct_per_row(cells // p)
            b = kernels.distinct_per_row(cells % p)
            viol = nonline & (d < p - np.minimum(a, b) + 2)
            violating["projection_support"] = viol
            t = result.tallies["projection_support"]
            t["skip"] += int(lines.sum())
            t["fail"] += int(viol.sum())
            t["pass"] += int(nonline.sum() - viol.sum())
        if kiss:
            viol = np.zeros(len(idx), dtype=bool)
            flagged = np.zeros(len(idx), dtype=bool)
            for c in range(p + 1):
                counts = kernels.projection_counts(cells, p, c)
                coeffs = kernels.coeffs_from_tables(counts, p)
                deg = kernels.degrees_from_coeffs(coeffs)
                flagged |= nonline & (deg < 0)
                viol |= nonline & (deg >= 0) & (d < deg + 2)
            result.zero_projection_rows += int(flagged.sum())
            violating["kiss_somlai"] = viol
            t = result.tallies["kiss_somlai"]
            t["skip"] += int(lines.sum())
            t["fail"] += int(viol.sum())
            t["pass"] += int(nonline.sum() - viol.sum())

        checkers = {
            "redei": check_redei,
            "szonyi": check_szonyi,
            "projection_support": check_projection_support,
            "kiss_somlai": check_kiss_somlai,
        }
        for name, viol in violating.items():
            for row in cells[viol]:
                h = PointSet.from_cells(m, (int(c) for c in row))
                report = checkers[name](h)
                if report.status != "fail":
                    raise RuntimeError(
                        f"kernel flagged a {name} violation the pure checker "
                        f"does not confirm: {h.text_form()}"
                    )
                result.failures.append(report)
    return result


def run_subset_census(
    plan: EnumerationPlan,
    k: int,
    statements: Sequence[str] = ("redei",),
    extremal_target: int | None = None,
) -> SubsetCensus:
    """Census of k-subsets of AG(2,p) with per-statement verdict tallies."""
    if plan.target != "point_sets":
        raise ValueError(f"plan targets {plan.target!r}, not point_sets")
    statements = tuple(statements)
    for s in statements:
        if STATEMENT_TARGETS.get(s) != "point_sets":
            raise ValueError(f"{s!r} is not a point-set statement")
    if plan.mode == "exhaustive":
        total = _guard_exhaustive_subsets(plan.p, k)
    else:
        if not 2 <= k <= plan.p * plan.p:
            raise ValueError(f"subset cardinality must be in [2, {plan.p**2}], got {k}")
        total = plan.sample_count
    parts = _run_chunked(
        _subset_census_chunk, (plan, k, statements, extremal_target),
        total, plan.worker_chunks,
    )
    result = parts[0]
    for part in parts[1:]:
        result.merge(part)
    return result


# ---------------------------------------------------------------------------
# Function census.


def _function_census_chunk(
    plan: EnumerationPlan, statements: tuple[str, ...], lo: int, hi: int
) -> FunctionCensus:
    p = plan.p
    m = plan.modulus
    result = FunctionCensus(
        p, plan.mode, plan.seed, statements,
        tallies={s: _new_tally() for s in statements},
    )
    witness_table = np.array(one_plus_legendre(m).value_table(), dtype=np.int64)

    for start in range(lo, hi, _FUNCTION_BLOCK):
        idx = np.arange(start, min(start + _FUNCTION_BLOCK, hi), dtype=np.int64)
        if plan.mode == "exhaustive":
            tables = kernels.base_digits(idx, p, p)
        else:
            tables = kernels.sampled_function_tables(plan.seed, idx, p)
        result.scanned += len(idx)
        sums = tables.sum(axis=1)
        survivors = sums == p
        surv_idx = np.nonzero(survivors)[0]
        result.sum_p_count += len(surv_idx)

        if len(surv_idx):
            surv_tables = tables[surv_idx]
            coeffs = kernels.coeffs_from_tables(surv_tables, p)
            degs = kernels.degrees_from_coeffs(coeffs)
            for deg in degs:
                deg = int(deg)
                result.survivor_degree_histogram[deg] = (
                    result.survivor_degree_histogram.get(deg, 0) + 1
                )
            nonconst = degs[degs >= 1]
            if len(nonconst):
                low = int(nonconst.min())
                if result.min_nonconstant_degree is None or low < result.min_nonconstant_degree:
                    result.min_nonconstant_degree = low
            if not result.sharp_witness_seen:
                result.sharp_witness_seen = bool(
                    (surv_tables == witness_table).all(axis=1).any()
                )

        def pure(table_row) -> Polynomial:
            return Polynomial.interpolate(m, [int(v) for v in table_row])

        for s in statements:
            t = result.tallies[s]
            if s == "sum_criterion":
                coeffs_all = kernels.coeffs_from_tables(tables, p)
                deg_all = kernels.degrees_from_coeffs(coeffs_all)
                equiv = (sums % p == 0) == (deg_all < p - 1)
                bad = np.nonzero(~equiv)[0]
                t["pass"] += int(equiv.sum())
                t["fail"] += len(bad)
                for i in bad:
                    report = check_sum_criterion(pure(tables[i]))
                    if report.status != "fail":
                        raise RuntimeError("kernel/pure disagreement on sum_criterion")
                    result.failures.append(report)
            elif s in ("main", "proposition"):
                checker = check_main if s == "main" else check_proposition
                t["skip"] += int(len(idx) - len(surv_idx))
                for i in surv_idx:
                    report = checker(pure(tables[i]))
                    if report.status == "fail":
                        result.failures.append(report)
                        t["fail"] += 1
                    else:
                        t["pass"] += 1
            elif s == "parity_identity":
                qual = survivors & (tables[:, 0] == 0)
                qual_idx = np.nonzero(qual)[0]
                t["skip"] += int(len(idx) - len(qual_idx))
                for i in qual_idx:
                    report = check_parity_identity(pure(tables[i]))
                    if report.status == "fail":
                        result.failures.append(report)
                        t["fail"] += 1
                    else:
                        t["pass"] += 1
    return result


def run_function_census(
    plan: EnumerationPlan, statements: Sequence[str] = ("main",)
) -> FunctionCensus:
    """Census of functions F_p -> F_p with per-statement verdict tallies."""
    if plan.target != "functions":
        raise ValueError(f"plan targets {plan.target!r}, not functions")
    statements = tuple(statements)
    for s in statements:
        if STATEMENT_TARGETS.get(s) != "functions":
            raise ValueError(f"{s!r} is not a function statement")
    total = plan.p**plan.p if plan.mode == "exhaustive" else plan.sample_count
    parts = _run_chunked(
        _function_census_chunk, (plan, statements), total, plan.worker_chunks
    )
    result = parts[0]
    for part in parts[1:]:
        result.merge(part)
    return result


# ---------------------------------------------------------------------------
# Product census.


def run_product_census(plan: EnumerationPlan) -> ProductCensus:
    """Census of Cartesian products A x B against the product bound."""
    result = ProductCensus(plan.p, plan.mode, plan.seed)
    for a, b in enumerate_products(plan):
        report = check_dsw_product(plan.modulus, a, b)
        result.scanned += 1
        result.tally[report.status] += 1
        if report.status == "skip":
            result.skip_reasons[report.skipped_reason] = (
                result.skip_reasons.get(report.skipped_reason, 0) + 1
            )
        elif report.status == "fail":
            result.failures.append(report)
    return result


# ---------------------------------------------------------------------------
# Classification.


@dataclass(frozen=True)
class OrbitClass:
    """One equivalence class: canonical representative and orbit size."""

    canonical: tuple[int, ...] | str
    orbit_size: int
    members_seen: int


@dataclass
class PolynomialClassification:
    p: int
    survivor_count: int
    classes: list[OrbitClass]
    witness_canonical: tuple[int, ...]
    witness_orbit_is_unique: bool
    transform_convention: str = "input substitutions x -> a*x + b only"


@dataclass
class SetClassification:
    p: int
    direction_count: int
    total_members: int
    classes: list[OrbitClass]
    reverified_members: int


def classify_half_degree_polynomials(p: int) -> PolynomialClassification:
    """Partition the degree-(p-1)/2, value-sum-p polynomials into orbits.

    The group action is input substitution g(x) -> g(a*x + b) with a != 0;
    whether output-side maps should also be allowed is left open upstream,
    so the convention is recorded on the result. The canonical member of an
    orbit is its lexicographically least coefficient vector.
    """
    if p > POLY_CLASSIFY_MAX_P:
        raise GuardError(
            f"polynomial classification is limited to p <= {POLY_CLASSIFY_MAX_P}, got {p}"
        )
    m = PrimeModulus(p)
    h = (p - 1) // 2
    low_count = p**h
    total = half_degree_polynomial_count(p)
    survivor_blocks = []
    block = 1 << 18
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.int64)
        coeffs = np.empty((len(idx), h + 1), dtype=np.int64)
        coeffs[:, :h] = kernels.base_digits(idx % low_count, p, h)
        coeffs[:, h] = 1 + idx // low_count
        values = kernels.values_from_coeffs(coeffs, p)
        keep = values.sum(axis=1) == p
        if keep.any():
            survivor_blocks.append(values[keep])
    tables = (
        np.vstack(survivor_blocks)
        if survivor_blocks
        else np.empty((0, p), dtype=np.int64)
    )
    survivor_set = {tuple(int(v) for v in row) for row in tables}

    perms = kernels.substitution_permutations(p)
    classes: list[OrbitClass] = []
    assigned: set[tuple[int, ...]] = set()
    for row in tables:
        key = tuple(int(v) for v in row)
        if key in assigned:
            continue
        orbit = np.unique(row[perms], axis=0)
        for img in orbit:
            img_key = tuple(int(v) for v in img)
            if img_key not in survivor_set:
                raise RuntimeError("substitution orbit left the survivor set")
            assigned.add(img_key)
        coeff_rows = kernels.coeffs_from_tables(orbit, p)
        canon_row = coeff_rows[np.lexsort(coeff_rows.T[::-1])[0]]
        canon = [int(c) for c in canon_row]
        while canon and canon[-1] == 0:
            canon.pop()
        classes.append(OrbitClass(tuple(canon), len(orbit), len(orbit)))
    classes.sort(key=lambda c: c.canonical)

    witness_table = np.array(one_plus_legendre(m).value_table(), dtype=np.int64)
    witness_orbit = np.unique(witness_table[perms], axis=0)
    wc_rows = kernels.coeffs_from_tables(witness_orbit, p)
    wc = [int(c) for c in wc_rows[np.lexsort(wc_rows.T[::-1])[0]]]
    while wc and wc[-1] == 0:
        wc.pop()
    witness_canonical = tuple(wc)
    if witness_canonical not in {c.canonical for c in classes}:
        raise RuntimeError("the x**((p-1)/2) + 1 orbit is missing from the census")
    return PolynomialClassification(
        p=p,
        survivor_count=len(survivor_set),
        classes=classes,
        witness_canonical=witness_canonical,
        witness_orbit_is_unique=len(classes) == 1,
    )


def classify_extremal_sets(p: int, worker_chunks: int = 1) -> SetClassification:
    """Classify p-point sets with exactly (p+3)/2 directions up to affinity.

    Runs the exhaustive p-point census, collects the extremal sets, walks
    whole affine orbits to partition them, and re-verifies every member's
    direction count through the pure pair-enumeration route.
    """
    if p > SET_CLASSIFY_MAX_P:
        raise GuardError(
            f"set classification is limited to p <= {SET_CLASSIFY_MAX_P}, got {p}"
        )
    m = PrimeModulus(p)
    target = (p + 3) // 2
    plan = EnumerationPlan(m, "point_sets", "exhaustive", worker_chunks=worker_chunks)
    census = run_subset_census(plan, p, statements=(), extremal_target=target)
    member_set = set(census.extremal_cells)

    classes: list[OrbitClass] = []
    assigned: set[tuple[int, ...]] = set()
    for cells in sorted(member_set):
        if cells in assigned:
            continue
        orbit_rows = kernels.orbit_of_cells(cells, p)
        orbit = [tuple(int(c) for c in row) for row in orbit_rows]
        for member in orbit:
            if member not in member_set:
                raise RuntimeError("affine orbit left the extremal census")
            assigned.add(member)
        classes.append(
            OrbitClass(cells_to_grid_hex(orbit[0], p), len(orbit), len(orbit))
        )
    classes.sort(key=lambda c: c.canonical)

    reverified = 0
    for cells in sorted(member_set):
        h = PointSet.from_cells(m, cells)
        if len(direction_set(h)) != target:
            raise RuntimeError(f"member {h.text_form()} fails re-verification")
        reverified += 1
    return SetClassification(
        p=p,
        direction_count=target,
        total_members=len(member_set),
        classes=classes,
        reverified_members=reverified,
    )


# ---------------------------------------------------------------------------
# Verification driver and counterexample hunting.


@dataclass
class VerifyOutcome:
    """What a verify run saw: tallies, failures, and grade."""

    statement_id: str
    p: int
    mode: str
    seed: int
    scanned: int
    tally: dict[str, int]
    failures: list[CheckReport]
    evidence_grade: bool
    notes: list[str] = field(default_factory=list)
    reports: list[CheckReport] = field(default_factory=list)
    subset_census: SubsetCensus | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_statement(
    modulus: PrimeModulus,
    statement_id: str,
    mode: str,
    sample_count: int = 0,
    seed: int = DEFAULT_SEED,
    worker_chunks: int = 1,
    k: int | None = None,
) -> VerifyOutcome:
    """Run one statement's checker over a full plan and summarize."""
    target = STATEMENT_TARGETS.get(statement_id)
    if target is None:
        raise ValueError(f"unknown statement id {statement_id!r}")
    plan = EnumerationPlan(modulus, target, mode, sample_count, seed, worker_chunks)
    evidence = mode == "sampled"
    notes: list[str] = []
    if evidence:
        notes.append("sampled run: evidence grade, absence of hits is not a proof")

    if target == "functions":
        fc = run_function_census(plan, statements=(statement_id,))
        if statement_id == "main" and mode == "exhaustive":
            notes.append(
                f"sum-p instances: {fc.sum_p_count}; minimal non-constant degree "
                f"{fc.min_nonconstant_degree} (bound {(modulus.p - 1) // 2}); "
                f"sharp witness x**{(modulus.p - 1) // 2} + 1 "
                f"{'seen' if fc.sharp_witness_seen else 'not seen'}"
            )
        return VerifyOutcome(
            statement_id, modulus.p, mode, seed, fc.scanned,
            dict(fc.tallies[statement_id]), fc.failures, evidence, notes,
        )

    if target == "product_sets":
        pc = run_product_census(plan)
        notes.append(f"skip reasons: {pc.skip_reasons}")
        return VerifyOutcome(
            statement_id, modulus.p, mode, seed, pc.scanned,
            dict(pc.tally), pc.failures, evidence, notes,
        )

    kk = k if k is not None else modulus.p
    if statement_id == "gacs_gap":
        census = run_subset_census(plan, kk, statements=())
        exemplars = {
            d: PointSet.from_cells(modulus, cells).text_form()
            for d, cells in census.exemplars.items()
        }
        report = check_gacs_gap(
            modulus, census.direction_histogram,
            evidence_grade=evidence, scanned=census.scanned, exemplars=exemplars,
        )
        if report.witness["vacuous"]:
            notes.append("the open gap interval contains no integer: vacuous pass")
        tally = _new_tally()
        tally[report.status] += 1
        return VerifyOutcome(
            statement_id, modulus.p, mode, seed, census.scanned, tally,
            [report] if report.status == "fail" else [], evidence, notes,
            [report], census,
        )

    census = run_subset_census(plan, kk, statements=(statement_id,))
    return VerifyOutcome(
        statement_id, modulus.p, mode, seed, census.scanned,
        dict(census.tallies[statement_id]), census.failures, evidence, notes,
        subset_census=census,
    )


def hunt_counterexamples(
    plan: EnumerationPlan, statement_id: str, k: int | None = None
) -> list[CheckReport]:
    """Run a statement over a plan and keep only the failures.

    Expected to come back empty for every verified statement within the
    exhaustive guards; any hit carries its full witness.
    """
    target = STATEMENT_TARGETS.get(statement_id)
    if target is None:
        raise ValueError(f"unknown statement id {statement_id!r}")
    if plan.target != target:
        raise ValueError(
            f"statement {statement_id!r} needs target {target!r}, plan has {plan.target!r}"
        )
    outcome = verify_statement(
        plan.modulus, statement_id, plan.mode, plan.sample_count,
        plan.seed, plan.worker_chunks, k,
    )
    return outcome.failures


def census_csv(census: SubsetCensus) -> str:
    """The census exchange format: p, k, d, count, exemplar rows."""
    import csv
    import io

    m = PrimeModulus(census.p)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "k", "d", "count", "exemplar"])
    for d in sorted(census.direction_histogram):
        exemplar = census.exemplars.get(d)
        text = PointSet.from_cells(m, exemplar).text_form() if exemplar else ""
        writer.writerow([census.p, census.k, d, census.direction_histogram[d], text])
    return buf.getvalue()
