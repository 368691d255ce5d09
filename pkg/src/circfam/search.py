"""Exhaustive decision procedure: does C(p, q) embed into the t-subset
intersection matrix over [k]?

Produces verified witnesses or certified per-k nonexistence for desk-scale
parameters. Column members are filled first with forward checking against the
row constraints; ground-set relabeling is broken by first-use order and the
cyclic automorphism of the target by requiring the first column member to be
minimal. Either reduction can be disabled to cross-check outcomes.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from . import _kernel
from ._purekernel import STATUS_INCONCLUSIVE, STATUS_WITNESS
from .boolmat import BoolMatrix, CirculantSpec, circulant
from .errors import OrderCapError, ParameterRangeError
from .families import FamilyPair, SetFamily, intersection_matrix

MAX_ORDER = 12  # practical cap for exhaustive mode
WORKERS_ENV = "CIRCFAM_WORKERS"


@dataclass(frozen=True)
class SearchLimits:
    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class SearchProblem:
    """Parameters of one embedding question, with its canonical target.

    ``allow_rotations`` records that row rotations of the target are
    realization-equivalent (rotating the row family turns a shift-s
    realization into a shift-0 one), so the search always targets the
    canonical matrix and the flag never changes the status.
    """

    k: int
    t: int
    p: int
    q: int
    allow_rotations: bool = True
    limits: SearchLimits = field(default_factory=SearchLimits)

    def __post_init__(self) -> None:
        if self.t < 1 or self.p < 1 or self.q < 1:
            raise ParameterRangeError(
                f"need t, p, q >= 1, got t={self.t}, p={self.p}, q={self.q}"
            )
        if self.k < 2 * self.t:
            raise ParameterRangeError(
                f"need k >= 2t (otherwise every pair of members intersects), got k={self.k}"
            )
        cap = comb(2 * self.t, self.t)
        if self.p >= cap:
            raise OrderCapError(
                f"p={self.p} is at least binom(2t, t) = {cap}: no embedding can exist"
            )
        if self.n > MAX_ORDER:
            raise OrderCapError(
                f"order p+q = {self.n} exceeds the exhaustive-search cap {MAX_ORDER}"
            )

    @property
    def n(self) -> int:
        return self.p + self.q

    def target(self) -> BoolMatrix:
        return circulant(CirculantSpec(self.p, self.q))


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "witness" | "nonexistent" | "inconclusive"
    witness: FamilyPair | None
    nodes: int
    exhausted: bool
    seconds: float
    backend: str

    def __post_init__(self) -> None:
        if self.status == "nonexistent" and not self.exhausted:
            raise AssertionError("nonexistence requires an exhausted search")


def _subset_masks(k: int, t: int) -> list[int]:
    masks = [sum(1 << e for e in combo) for combo in combinations(range(k), t)]
    masks.sort()
    return masks


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(WORKERS_ENV, "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise ParameterRangeError(f"{WORKERS_ENV}={env!r} is not an integer")
    return 1


def _branch_prefixes(
    subsets: list[int],
    sym_labels: bool,
    sym_cyclic: bool,
) -> list[list[int]]:
    """Depth-1 subtree roots: one prefix per viable first-level candidate.

    With first-use labeling on, level 0 admits only {1..t}, so branching
    happens at level 1 instead.
    """
    t_mask_first = None
    level0: list[int] = []
    for idx, mask in enumerate(subsets):
        if sym_labels:
            high = mask
            if high & (high + 1):
                continue
        level0.append(idx)
        if t_mask_first is None:
            t_mask_first = idx
    if len(level0) > 1:
        return [[idx] for idx in level0]
    prefixes = []
    first = level0[0]
    u = subsets[first].bit_count() if sym_labels else 0
    for idx, mask in enumerate(subsets):
        if idx == first:
            continue
        if sym_cyclic and mask < subsets[first]:
            continue
        if sym_labels:
            high = mask >> u
            if high & (high + 1):
                continue
        prefixes.append([first, idx])
    return prefixes or [[first]]


def _run_kernel(args):
    backend_name, kernel_args = args
    kernel = _kernel.get_kernel(backend_name)
    return kernel.run_search(*kernel_args)


def decide_embedding(
    problem: SearchProblem,
    *,
    symmetry: bool = True,
    sym_labels: bool | None = None,
    sym_cyclic: bool | None = None,
    workers: int | None = None,
    deterministic: bool = False,
    backend: str = "auto",
) -> SearchOutcome:
    """Decide whether C(p, q) embeds into the t-subsets of [k].

    Returns a witness (re-verified through the intersection-matrix oracle,
    never trusted from search state), nonexistence after exhausting the
    symmetry-reduced space, or inconclusive on budget exhaustion. ``symmetry``
    toggles both reductions at once; the individual flags override it.
    """
    sym_labels = symmetry if sym_labels is None else sym_labels
    sym_cyclic = symmetry if sym_cyclic is None else sym_cyclic
    nworkers = _resolve_workers(workers)
    n = problem.n
    subsets = _subset_masks(problem.k, problem.t)
    target_rows = list(problem.target().masks)
    budget = problem.limits.max_nodes
    start = time.monotonic()
    deadline = None
    if problem.limits.max_seconds is not None:
        deadline = start + problem.limits.max_seconds
    backend_name = _kernel.resolve_backend_name(backend, nsub=len(subsets), k=problem.k)

    if nworkers == 1 or len(subsets) < n:
        kernel = _kernel.get_kernel(backend_name)
        status, nodes, wc, wr = kernel.run_search(
            n, problem.t, problem.k, target_rows, subsets, [],
            budget, sym_labels, sym_cyclic, deadline,
        )
        results = [(status, nodes, wc, wr)]
    else:
        prefixes = _branch_prefixes(subsets, sym_labels, sym_cyclic)
        jobs = [
            (backend_name, (n, problem.t, problem.k, target_rows, subsets, prefix,
                            budget, sym_labels, sym_cyclic, deadline))
            for prefix in prefixes
        ]
        results = _run_parallel(jobs, nworkers, deterministic)

    nodes = sum(res[1] for res in results)
    seconds = time.monotonic() - start
    witness_res = next((res for res in results if res[0] == STATUS_WITNESS), None)
    if witness_res is not None:
        _, _, wc, wr = witness_res
        rows = SetFamily.from_masks([subsets[i] for i in wr], problem.k, problem.t)
        cols = SetFamily.from_masks([subsets[i] for i in wc], problem.k, problem.t)
        pair = FamilyPair(rows, cols)
        if intersection_matrix(pair) != problem.target():
            raise AssertionError("search produced a witness that fails re-verification")
        return SearchOutcome("witness", pair, nodes, False, seconds, backend_name)
    if any(res[0] == STATUS_INCONCLUSIVE for res in results):
        return SearchOutcome("inconclusive", None, nodes, False, seconds, backend_name)
    return SearchOutcome("nonexistent", None, nodes, True, seconds, backend_name)


def _run_parallel(jobs, nworkers, deterministic):
    """Fan branch subtrees out to a process pool.

    Deterministic mode consumes results in canonical branch order, so the
    reported witness is the same as a single-worker run; otherwise the first
    finished witness wins and pending siblings are cancelled.
    """
    results = []
    with ProcessPoolExecutor(max_workers=nworkers) as pool:
        futures = [pool.submit(_run_kernel, job) for job in jobs]
        if deterministic:
            for fut in futures:
                res = fut.result()
                results.append(res)
                if res[0] == STATUS_WITNESS:
                    for other in futures:
                        other.cancel()
                    break
        else:
            pending = set(futures)
            stop = False
            while pending and not stop:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    res = fut.result()
                    results.append(res)
                    if res[0] == STATUS_WITNESS:
                        stop = True
            for fut in pending:
                fut.cancel()
    return results


@dataclass(frozen=True)
class SweepRecord:
    k: int
    t: int
    p: int
    q: int
    status: str
    nodes: int
    seconds: float
    outcome: SearchOutcome | None = None
    error: str | None = None

    def to_json(self) -> dict:
        doc = {
            "k": self.k,
            "t": self.t,
            "p": self.p,
            "q": self.q,
            "status": self.status,
            "nodes": self.nodes,
            "seconds": round(self.seconds, 6),
        }
        if self.error is not None:
            doc["error"] = self.error
        return doc


def sweep(
    t: int,
    p_values,
    q_values,
    k_values,
    *,
    max_nodes: int | None = None,
    symmetry: bool = True,
    workers: int | None = None,
    deterministic: bool = False,
    backend: str = "auto",
    skip=None,
):
    """Decide every cell of a parameter grid, yielding one record per cell.

    Cells in ``skip`` (a set of (k, t, p, q) tuples) are passed over, which
    makes interrupted sweeps resumable from their output file. Parameter
    errors are recorded in-table rather than raised.
    """
    skip = skip or set()
    for p in p_values:
        for q in q_values:
            for k in k_values:
                if (k, t, p, q) in skip:
                    continue
                try:
                    problem = SearchProblem(
                        k=k, t=t, p=p, q=q, limits=SearchLimits(max_nodes=max_nodes)
                    )
                except (ParameterRangeError, OrderCapError) as exc:
                    yield SweepRecord(k, t, p, q, "error", 0, 0.0, error=str(exc))
                    continue
                outcome = decide_embedding(
                    problem,
                    symmetry=symmetry,
                    workers=workers,
                    deterministic=deterministic,
                    backend=backend,
                )
                yield SweepRecord(
                    k, t, p, q, outcome.status, outcome.nodes, outcome.seconds, outcome
                )
