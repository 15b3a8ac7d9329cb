"""
Three stage bistellar search for small triangulations.

Heating subdivides facets until f0 grew by half. Each round then mixes with
a 1/2-move walk and cools with weights that favour removing edges and
vertices. The smallest triangulation reached in every cooling stage is
recorded when it beats everything recorded before, ordered by (f0, f1).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from joblib import Parallel, delayed

from .complex import Complex, validate
from .enumerator import CensusRecord
from .errors import UnexpectedComplexError
from .homology import HomologyProfile, integral_homology
from .moves import (FlipState, MoveDescriptor, Weights, ensure_relations,
                    make_rng, validate_weights)

logger = logging.getLogger(__name__)

Key = Tuple[int, int]


@dataclass(frozen=True)
class SearchConfig:
    """
    Annealing parameters.

    :param seed: Seed of the PCG64 generator.
    :param heat_weights: Move weights while heating.
    :param mix_weights: Move weights while mixing.
    :param cool_weights: Move weights while cooling, ``math.inf`` first.
    :param mix_moves: Moves per mixing stage.
    :param cool_moves: Moves per cooling stage.
    :param rounds: Number of mix and cool rounds.
    :param f0_floor_offset: When set, cooling never removes a vertex below
        ``best_known_f0 + f0_floor_offset``.
    :param best_known_f0: Smallest known f0 for the manifold, defaults to
        f0 of the start.
    :param check_interval: Moves between spot validations.
    """
    seed: int = 0
    heat_weights: Weights = (1, 0, 0, 0)
    mix_weights: Weights = (0, 1, 5, 0)
    cool_weights: Weights = (0, 1, 250, math.inf)
    mix_moves: int = 10_000
    cool_moves: int = 1_000_000
    rounds: int = 10
    f0_floor_offset: Optional[int] = None
    best_known_f0: Optional[int] = None
    check_interval: int = 10_000

    def __post_init__(self) -> None:
        for weights in (self.heat_weights, self.mix_weights,
                        self.cool_weights):
            validate_weights(weights)
        if self.rounds < 1:
            raise ValueError("At least one round is needed")
        if self.mix_moves < 0 or self.cool_moves < 0:
            raise ValueError("Move budgets have to be nonnegative")
        if self.check_interval < 1:
            raise ValueError("Check interval has to be positive")


@dataclass(frozen=True)
class RoundTrace:
    """Statistics of one mix and cool round."""
    round: int
    f_after_mix: Tuple[int, int, int, int]
    f_after_cool: Tuple[int, int, int, int]
    best_in_round: Key
    mixed: int
    cooled: int
    stalls: int


@dataclass
class SearchResult:
    """
    Recorded triangulations, each strictly smaller in (f0, f1) than the one
    before, and the per-round trace.
    """
    seed: int
    best: List[CensusRecord] = field(default_factory=list)
    trace: List[RoundTrace] = field(default_factory=list)

    @property
    def best_key(self) -> Optional[Key]:
        if not self.best:
            return None
        f = self.best[-1].f_vector
        return f[0], f[1]


def _key(state: FlipState) -> Key:
    return state.f0, state.f1


class _Annealer:

    def __init__(self, K0: Complex, cfg: SearchConfig) -> None:
        self.cfg = cfg
        self.rng = make_rng(cfg.seed)
        self.state = FlipState(K0)
        self.homology = integral_homology(K0)
        self.start_f0 = K0.vertex_count
        self.moves_done = 0
        self.floor: Optional[int] = None
        if cfg.f0_floor_offset is not None:
            known = cfg.best_known_f0 or K0.vertex_count
            self.floor = known + cfg.f0_floor_offset
        self.result = SearchResult(cfg.seed)
        self.best: Optional[Key] = (None if self.floor is not None
                                    else (K0.vertex_count, K0.f_vector()[1]))

    def _step(self, weights) -> bool:
        move = self.state.random_move(weights, self.rng)
        if move is None:
            return False
        self._apply(move)
        return True

    def _apply(self, move: MoveDescriptor) -> None:
        self.state.apply(move)
        self.moves_done += 1
        if self.moves_done % self.cfg.check_interval == 0:
            self._spot_check()

    def _spot_check(self) -> None:
        ensure_relations(self.state)
        report = validate(self.state.to_complex())
        if not report.is_manifold:
            raise UnexpectedComplexError(
                f"Search left the manifold: {report.first_violation}")

    def _check_homology(self, K: Complex) -> HomologyProfile:
        profile = integral_homology(K)
        if profile != self.homology:
            raise UnexpectedComplexError(
                f"Homology changed from {self.homology} to {profile}")
        return profile

    def heat(self) -> None:
        target = math.ceil(1.5 * self.start_f0)
        while self.state.f0 < target:
            if not self._step(self.cfg.heat_weights):
                logger.debug("Heating stalled at f0=%d", self.state.f0)
                break
        self._spot_check()
        logger.info("Heated to f=%s", self.state.f_vector())

    def mix(self) -> Tuple[int, int]:
        for done in range(self.cfg.mix_moves):
            if not self._step(self.cfg.mix_weights):
                logger.debug("Mixing stalled after %d moves", done)
                return done, 1
        return self.cfg.mix_moves, 0

    def _cool_weights(self) -> Weights:
        w0, w1, w2, w3 = self.cfg.cool_weights
        if self.floor is not None and self.state.f0 - 1 < self.floor:
            return w0, w1, w2, 0
        return w0, w1, w2, w3

    def _admissible(self, key: Key) -> bool:
        return self.floor is None or key[0] >= self.floor

    def cool(self) -> Tuple[int, int, Optional[Key], Optional[Complex]]:
        round_best: Optional[Key] = None
        snapshot: Optional[Complex] = None
        # the best state is copied only before a move that grows (f0, f1)
        pending = self._admissible(_key(self.state))
        if pending:
            round_best = _key(self.state)
        done, stalls = 0, 0
        while done < self.cfg.cool_moves:
            weights = self._cool_weights()
            move = (self.state.random_move(weights, self.rng)
                    if any(w > 0 for w in weights) else None)
            if move is None:
                logger.debug("Cooling stalled at f=%s", self.state.f_vector())
                stalls += 1
                break
            if pending and move.kind in (0, 1):
                snapshot, pending = self.state.to_complex(), False
            self._apply(move)
            done += 1
            key = _key(self.state)
            if self._admissible(key) and (round_best is None or
                                          key < round_best):
                round_best, pending = key, True
        if pending:
            snapshot = self.state.to_complex()
        return done, stalls, round_best, snapshot

    def _record(self, index: int, key: Key, K: Complex) -> None:
        if self.best is not None and key >= self.best:
            return
        self._spot_check_complex(K)
        self._check_homology(K)
        record = CensusRecord.from_complex(
            K, f"anneal;seed={self.cfg.seed};round={index}")
        self.result.best.append(record)
        self.best = key
        logger.info("Round %d recorded f=%s", index, record.f_vector)

    @staticmethod
    def _spot_check_complex(K: Complex) -> None:
        report = validate(K)
        if not report.is_manifold:
            raise UnexpectedComplexError(
                f"Recorded complex is not a manifold: "
                f"{report.first_violation}")

    def run(self) -> SearchResult:
        self.heat()
        for index in range(1, self.cfg.rounds + 1):
            mixed, mix_stalls = self.mix()
            f_after_mix = self.state.f_vector()
            cooled, cool_stalls, round_best, snapshot = self.cool()
            self._spot_check()
            if round_best is not None and snapshot is not None:
                self._record(index, round_best, snapshot)
            self.result.trace.append(RoundTrace(
                index, f_after_mix, self.state.f_vector(),
                round_best or _key(self.state), mixed, cooled,
                mix_stalls + cool_stalls))
            logger.info("Round %d: best in round %s, overall %s", index,
                        round_best, self.best)
        return self.result


def run(K0: Complex, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """
    Anneals from K0.

    :param K0: Valid closed 3-manifold triangulation.
    :param cfg: Search parameters.
    :raises UnexpectedComplexError: When a checked complex isn't a manifold
        or its homology differs from K0's.
    :return: Recorded triangulations and trace, determined by (K0, cfg).
    """
    logger.info("Annealing f=%s with seed %d", K0.f_vector(), cfg.seed)
    return _Annealer(K0, cfg).run()


def run_many(K0: Complex, configs: Iterable[SearchConfig],
             jobs: int = 1) -> List[SearchResult]:
    """Independent runs, one per config, on ``jobs`` processes."""
    configs = list(configs)
    if jobs == 1:
        return [run(K0, cfg) for cfg in configs]
    return Parallel(n_jobs=jobs)(delayed(run)(K0, cfg) for cfg in configs)
