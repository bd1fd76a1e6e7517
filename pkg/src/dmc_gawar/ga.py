"""Feature-subset search by a genetic algorithm that retunes its own rates.

Individuals are fixed-size sets of distinct feature indices drawn from a
candidate pool.  Selection is fitness-proportional, crossover is single
point with duplicate repair, mutation swaps one gene for an unused pool
member.  A controller watches the best fitness: every five stagnant
iterations it shifts weight from crossover to mutation, and once the
mutation rate passes 1.0 the whole population is mutated each iteration.
Any improvement snaps the rates back to their initial values.  The search
stops after a fixed number of consecutive stagnant iterations.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

INITIAL_CROSSOVER_TENTHS = 9
INITIAL_MUTATION_TENTHS = 4
CROSSOVER_FLOOR_TENTHS = 3
RATE_STEP_TENTHS = 2
ADAPT_PATIENCE = 5


@dataclass
class RateController:
    """Stagnation-driven crossover/mutation rate schedule.

    Rates live in integer tenths; the operator counts below must match the
    hand-computed ceilings exactly, and float steps of 0.2 drift enough to
    flip a ceiling.  ``tag`` counts iterations since the last improvement
    plus one; ``adapt_tag`` is the five-iteration patience counter.
    """

    pc_tenths: int = INITIAL_CROSSOVER_TENTHS
    pm_tenths: int = INITIAL_MUTATION_TENTHS
    tag: int = 1
    adapt_tag: int = 1

    @property
    def full_mutation(self) -> bool:
        return self.pm_tenths > 10

    @property
    def p_c(self) -> float:
        return 0.0 if self.full_mutation else self.pc_tenths / 10.0

    @property
    def p_m(self) -> float:
        return self.pm_tenths / 10.0

    @property
    def stagnant_iterations(self) -> int:
        return self.tag - 1

    def operator_counts(self, n_pop: int) -> tuple[int, int]:
        """(crossover slots, mutation slots); the crossover count is even."""
        if self.full_mutation:
            return 0, n_pop
        n_c = 2 * ((self.pc_tenths * n_pop + 19) // 20)  # 2 * ceil(p_c * n_pop / 2)
        n_m = (self.pm_tenths * n_pop + 9) // 10  # ceil(p_m * n_pop)
        return n_c, n_m

    def register_improvement(self) -> None:
        self.pc_tenths = INITIAL_CROSSOVER_TENTHS
        self.pm_tenths = INITIAL_MUTATION_TENTHS
        self.tag = 1
        self.adapt_tag = 1

    def register_stagnation(self) -> bool:
        """Count one stagnant iteration; True when the rates shifted."""
        self.tag += 1
        self.adapt_tag += 1
        if self.adapt_tag > ADAPT_PATIENCE:
            self.adapt_tag = 1
            self.pc_tenths = max(CROSSOVER_FLOOR_TENTHS, self.pc_tenths - RATE_STEP_TENTHS)
            self.pm_tenths += RATE_STEP_TENTHS
            return True
        return False


@dataclass(frozen=True)
class Individual:
    """Candidate subset; ``seq`` is the creation order, used to break ties."""

    genes: tuple[int, ...]
    fitness: float
    seq: int


@dataclass(frozen=True)
class IterationRecord:
    """One row of the convergence log; rates are those in force this iteration."""

    iteration: int
    best_fitness: float
    p_c: float
    p_m: float
    n_c: int
    n_m: int
    adapted: bool
    full_mutation: bool
    nfe_cumulative: int


@dataclass(frozen=True)
class GAResult:
    best_genes: tuple[int, ...]
    best_fitness: float
    history: tuple[IterationRecord, ...]
    nfe: int
    n_iterations: int
    search_space_size: int


def roulette_spin(weights: np.ndarray, rng: np.random.Generator) -> int:
    """Fitness-proportional pick: the smallest index whose cumulative share
    reaches the drawn uniform.  All-zero weights fall back to uniform."""
    weights = np.asarray(weights, dtype=float)
    total = weights.sum()
    if total <= 0.0:
        return int(rng.integers(len(weights)))
    cumulative = np.cumsum(weights / total)
    cumulative[-1] = 1.0
    return int(np.searchsorted(cumulative, rng.random(), side="left"))


def repair_duplicates(genes: list[int], space: Sequence[int], rng: np.random.Generator) -> list[int]:
    """Replace repeated genes (after their first occurrence) with draws from
    the unused pool members, kept sorted so the draw order is reproducible."""
    unused = sorted(set(int(g) for g in space) - set(genes))
    seen: set[int] = set()
    out = list(genes)
    for pos, gene in enumerate(out):
        if gene in seen:
            out[pos] = unused.pop(int(rng.integers(len(unused))))
        else:
            seen.add(gene)
    return out


def single_point_crossover(
    parent_a: Sequence[int],
    parent_b: Sequence[int],
    space: Sequence[int],
    rng: np.random.Generator,
) -> tuple[list[int], list[int]]:
    """Swap tails at one interior cut; both offspring are repaired to stay
    duplicate free.  Length-1 parents pass through unchanged."""
    n_var = len(parent_a)
    if n_var < 2:
        return list(parent_a), list(parent_b)
    cut = int(rng.integers(1, n_var))
    first = list(parent_a[:cut]) + list(parent_b[cut:])
    second = list(parent_b[:cut]) + list(parent_a[cut:])
    return repair_duplicates(first, space, rng), repair_duplicates(second, space, rng)


def point_mutation(
    genes: Sequence[int], space: Sequence[int], rng: np.random.Generator
) -> list[int]:
    """Replace one gene (position drawn first) with an unused pool member."""
    pool = sorted(set(int(g) for g in space) - set(genes))
    if not pool:
        raise ValueError("mutation needs at least one unused pool member")
    position = int(rng.integers(len(genes)))
    replacement = pool[int(rng.integers(len(pool)))]
    out = list(genes)
    out[position] = replacement
    return out


class SubsetOptimizer:
    """Runs the adaptive search over a candidate pool.

    ``fitness_fn`` maps a tuple of feature indices to a score to maximize;
    results are cached by the sorted gene tuple, and the evaluation count
    (NFE) only grows on cache misses.
    """

    def __init__(
        self,
        space: Sequence[int],
        n_var: int,
        fitness_fn: Callable[[tuple[int, ...]], float],
        seed: int,
        n_pop: int = 20,
        stagnation_limit: int = 30,
        max_iterations: int = 1000,
    ):
        space = np.asarray(space, dtype=int)
        if len(np.unique(space)) != len(space):
            raise ValueError("candidate pool members must be distinct")
        if n_var < 1:
            raise ValueError("n_var must be at least 1")
        if len(space) <= n_var:
            raise ValueError("candidate pool must be larger than n_var")
        if n_pop < 2:
            raise ValueError("population size must be at least 2")
        self.space = space
        self.n_var = n_var
        self.fitness_fn = fitness_fn
        self.rng = np.random.default_rng(seed)
        self.n_pop = n_pop
        self.stagnation_limit = stagnation_limit
        self.max_iterations = max_iterations
        self._cache: dict[tuple[int, ...], float] = {}
        self._seq = 0

    def _next_seq(self) -> int:
        self._seq += 1
        return self._seq

    def _evaluate(self, genes: tuple[int, ...]) -> float:
        key = tuple(sorted(genes))
        if key not in self._cache:
            self._cache[key] = float(self.fitness_fn(key))
        return self._cache[key]

    @property
    def nfe(self) -> int:
        return len(self._cache)

    def _spawn(self, genes: Sequence[int]) -> Individual:
        genes = tuple(int(g) for g in genes)
        return Individual(genes, self._evaluate(genes), self._next_seq())

    def run(self) -> GAResult:
        rng = self.rng
        population = [
            self._spawn(rng.choice(self.space, size=self.n_var, replace=False))
            for _ in range(self.n_pop)
        ]
        population.sort(key=lambda ind: (-ind.fitness, ind.seq))
        best = population[0].fitness

        controller = RateController()
        history: list[IterationRecord] = []
        iteration = 0
        while iteration < self.max_iterations:
            iteration += 1
            n_c, n_m = controller.operator_counts(self.n_pop)
            p_c, p_m = controller.p_c, controller.p_m
            full = controller.full_mutation

            weights = np.array([ind.fitness for ind in population], dtype=float)
            offspring: list[Individual] = []
            for _ in range(n_c // 2):
                first = population[roulette_spin(weights, rng)]
                second = population[roulette_spin(weights, rng)]
                for child in single_point_crossover(first.genes, second.genes, self.space, rng):
                    offspring.append(self._spawn(child))
            for _ in range(n_m):
                parent = population[roulette_spin(weights, rng)]
                offspring.append(self._spawn(point_mutation(parent.genes, self.space, rng)))

            merged = sorted(population + offspring, key=lambda ind: (-ind.fitness, ind.seq))
            population = merged[: self.n_pop]
            adapted = False
            if population[0].fitness > best:
                best = population[0].fitness
                controller.register_improvement()
            else:
                adapted = controller.register_stagnation()
            history.append(
                IterationRecord(iteration, best, p_c, p_m, n_c, n_m, adapted, full, self.nfe)
            )
            if controller.stagnant_iterations >= self.stagnation_limit:
                break

        winner = population[0]
        return GAResult(
            best_genes=tuple(sorted(winner.genes)),
            best_fitness=winner.fitness,
            history=tuple(history),
            nfe=self.nfe,
            n_iterations=iteration,
            search_space_size=math.comb(len(self.space), self.n_var),
        )


CONVERGENCE_COLUMNS = (
    "iteration",
    "best_fitness",
    "p_c",
    "p_m",
    "n_c",
    "n_m",
    "adapted",
    "full_mutation",
    "nfe_cumulative",
)


def write_convergence_csv(history: Sequence[IterationRecord], path) -> None:
    """One row per iteration; floats use shortest round-trip formatting."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CONVERGENCE_COLUMNS)
        for rec in history:
            writer.writerow(
                [
                    rec.iteration,
                    repr(rec.best_fitness),
                    repr(rec.p_c),
                    repr(rec.p_m),
                    rec.n_c,
                    rec.n_m,
                    int(rec.adapted),
                    int(rec.full_mutation),
                    rec.nfe_cumulative,
                ]
            )
