"""Monte Carlo experiments over the benchmark corpus, emitted as CSV rows.

Every trial draws from its own generator keyed on (master seed, experiment,
question, model, N, trial), so results do not depend on how trials are split
across worker processes.
"""

from __future__ import annotations

import csv
import io
import logging
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .analysis import MemoryProfile, cancellation_probability, expected_potential_answers_general
from .baselines import Model, build_vector_memory, recognize_vector
from .corpus import SENTENCES, atom_spec, build_corpus, get_question, max_blade_count, structural_counts
from .encoding import Construction, Measure, Mode, recognize

log = logging.getLogger(__name__)

KINDS = ("recognize", "potential", "cancel", "compare", "estimate")
HEADER = ("experiment", "model", "question", "construction", "mode", "measure", "N", "trials", "seed", "value")
TRIAL_CHUNK = 200


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    questions: tuple[str, ...] = ("PSmith#name",)
    constructions: tuple[Construction, ...] = (Construction.AGENT_OBJECT,)
    mode: Mode | None = None  # None: each question's default mode
    measures: tuple[Measure, ...] | None = None  # None: inner, or Hamming for compare
    n_min: int = 4
    n_max: int = 20
    n_step: int = 1
    trials: int = 1000
    seed: int = 0
    models: tuple[Model, ...] = (Model.GA, Model.HRR, Model.BSC)
    multiplier: int | None = None  # baseline length factor; None means max blade count
    baseline_construction: Construction = Construction.AGENT_OBJECT
    regimes: tuple[str, ...] = ("equal", "scaled")  # baseline lengths N and K*N
    definite: bool = False
    count_blank: bool = True
    restrict_to_top: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.n_step < 1 or self.n_min < 1 or self.n_max < self.n_min:
            raise ConfigError(f"empty N range {self.n_min}..{self.n_max} step {self.n_step}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        for q in self.questions:
            try:
                get_question(q)
            except KeyError as exc:
                raise ConfigError(str(exc.args[0])) from None
        if self.baseline_construction is Construction.AGENT_OBJECT_ODD:
            raise ConfigError("baselines have no odding construction; use plate or ao")
        if set(self.regimes) - {"equal", "scaled"} or not self.regimes:
            raise ConfigError(f"regimes must be drawn from equal, scaled; got {self.regimes}")
        if self.kind == "compare" and self.measures is not None and len(self.measures) != 1:
            raise ConfigError("compare runs exactly one GA measure")

    @property
    def measure_list(self) -> tuple[Measure, ...]:
        if self.measures is not None:
            return self.measures
        return (Measure.HAMMING,) if self.kind == "compare" else (Measure.INNER,)

    @property
    def sizes(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_step))

    @property
    def length_multiplier(self) -> int:
        return self.multiplier if self.multiplier is not None else max_blade_count(Construction.AGENT_OBJECT_ODD)


@dataclass(frozen=True, order=True)
class Row:
    experiment: str
    model: str
    question: str
    construction: str
    mode: str
    measure: str
    N: int
    trials: int
    seed: int
    value: float

    def cells(self) -> list[str]:
        return [
            self.experiment, self.model, self.question, self.construction, self.mode,
            self.measure, str(self.N), str(self.trials), str(self.seed), f"{self.value:.4f}",
        ]


def trial_rng(seed: int, label: str, n: int, trial: int) -> np.random.Generator:
    key = zlib.crc32(label.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(key, n, trial)))


def _mode_for(cfg: ExperimentConfig, question: str) -> Mode:
    return cfg.mode if cfg.mode is not None else get_question(question).mode


# worker tasks; top-level so that they pickle


@dataclass(frozen=True)
class _GaTask:
    label: str
    question: str
    n: int
    lo: int
    hi: int
    constructions: tuple[Construction, ...]
    measures: tuple[Measure, ...]
    mode: Mode
    seed: int
    definite: bool
    count_blank: bool
    restrict_to_top: bool


@dataclass(frozen=True)
class _VectorTask:
    label: str
    model: Model
    question: str
    d: int
    lo: int
    hi: int
    construction: Construction
    seed: int


@dataclass
class _Tally:
    correct: int = 0
    potential: int = 0
    in_potential: int = 0


def _run_ga(task: _GaTask) -> dict:
    case = get_question(task.question)
    out = {(c, m): _Tally() for c in task.constructions for m in task.measures}
    for trial in range(task.lo, task.hi):
        for construction in task.constructions:
            # same key for every construction: the vocabulary draw is shared
            rng = trial_rng(task.seed, task.label, task.n, trial)
            _, memory = build_corpus(rng, task.n, construction)
            for measure in task.measures:
                o = recognize(
                    memory, case.item, case.question, case.expected, task.mode, measure,
                    restrict_to_top=task.restrict_to_top, definite=task.definite,
                    count_blank=task.count_blank,
                )
                t = out[(construction, measure)]
                t.correct += o.correct
                t.potential += o.potential_count
                t.in_potential += o.correct_in_potential
    return {k: (v.correct, v.potential, v.in_potential) for k, v in out.items()}


def _run_vector(task: _VectorTask) -> int:
    case = get_question(task.question)
    atoms = atom_spec()
    hits = 0
    for trial in range(task.lo, task.hi):
        rng = trial_rng(task.seed, task.label, task.d, trial)
        memory = build_vector_memory(task.model, atoms, SENTENCES, task.d, task.construction, rng)
        hits += recognize_vector(memory, case.item, case.question, case.expected)
    return hits


def _chunks(trials: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + TRIAL_CHUNK, trials)) for lo in range(0, trials, TRIAL_CHUNK)]


def _execute(fn, tasks: list, jobs: int) -> list:
    if jobs == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _ga_tallies(cfg: ExperimentConfig, label_prefix: str, constructions, measures, mode_override=None) -> dict:
    """(question, N) -> {(construction, measure): (correct, potential, in_potential)} summed over trials."""
    tasks = []
    for q in cfg.questions:
        mode = mode_override or _mode_for(cfg, q)
        for n in cfg.sizes:
            for lo, hi in _chunks(cfg.trials):
                tasks.append(_GaTask(
                    f"{label_prefix}/{q}/ga", q, n, lo, hi, tuple(constructions), tuple(measures), mode,
                    cfg.seed, cfg.definite, cfg.count_blank, cfg.restrict_to_top,
                ))
    totals: dict = {}
    for task, result in zip(tasks, _execute(_run_ga, tasks, cfg.jobs)):
        cell = totals.setdefault((task.question, task.n), {})
        for key, (c, p, i) in result.items():
            a, b, d = cell.get(key, (0, 0, 0))
            cell[key] = (a + c, b + p, d + i)
        log.debug("GA %s N=%d trials %d..%d done", task.question, task.n, task.lo, task.hi)
    return totals


def run_recognition(cfg: ExperimentConfig) -> list[Row]:
    totals = _ga_tallies(cfg, "recognize", cfg.constructions, cfg.measure_list)
    rows = []
    for (q, n), cell in totals.items():
        mode = _mode_for(cfg, q).value
        for (con, measure), (correct, _, _) in cell.items():
            rows.append(Row("recognize", "GA", q, con.value, mode, measure.value, n, cfg.trials, cfg.seed,
                            100.0 * correct / cfg.trials))
    return _sorted(rows)


def _profile_for(construction: Construction) -> MemoryProfile:
    counts: dict[int, int] = {1: len(atom_spec())}
    for k in structural_counts(construction).values():
        counts[k] = counts.get(k, 0) + 1
    return MemoryProfile(counts)


def run_potential_answers(cfg: ExperimentConfig) -> list[Row]:
    """Mean |potential answers| per N, with the closed-form estimate where one applies."""
    totals = _ga_tallies(cfg, "potential", cfg.constructions, (Measure.INNER,))
    rows = []
    for (q, n), cell in totals.items():
        mode = _mode_for(cfg, q).value
        for (con, _), (_, potential, _) in cell.items():
            rows.append(Row("potential", "GA", q, con.value, mode, "inner", n, cfg.trials, cfg.seed,
                            potential / cfg.trials))
    for q in cfg.questions:
        case = get_question(q)
        if case.estimator is None or Construction.AGENT_OBJECT not in cfg.constructions:
            continue
        profile = _profile_for(Construction.AGENT_OBJECT)
        for n in cfg.sizes:
            value = expected_potential_answers_general(profile, case.estimator, n)
            rows.append(Row("potential", "estimate", q, "ao", _mode_for(cfg, q).value, "inner", n, 0,
                            cfg.seed, value))
    return _sorted(rows)


def cancellation_asymptote(blades: int) -> float:
    """Long-run share of trials whose answer survives, as a percentage."""
    if blades % 2:
        return 100.0
    return 100.0 * float(1 - cancellation_probability(blades // 2))


def run_cancellation(cfg: ExperimentConfig) -> list[Row]:
    totals = _ga_tallies(cfg, "cancel", cfg.constructions, (Measure.INNER,))
    rows = []
    for (q, n), cell in totals.items():
        mode = _mode_for(cfg, q).value
        for (con, _), (_, _, in_potential) in cell.items():
            rows.append(Row("cancel", "GA", q, con.value, mode, "inner", n, cfg.trials, cfg.seed,
                            100.0 * in_potential / cfg.trials))
    for q in cfg.questions:
        expected = get_question(q).expected
        for con in cfg.constructions:
            blades = structural_counts(con).get(expected, 1)
            for n in cfg.sizes:
                rows.append(Row("cancel", "asymptote", q, con.value, _mode_for(cfg, q).value, "inner", n, 0,
                                cfg.seed, cancellation_asymptote(blades)))
    return _sorted(rows)


def run_comparison(cfg: ExperimentConfig) -> list[Row]:
    """GA (odding construction, one signature measure) against HRR and BSC at N and K*N."""
    measure = cfg.measure_list[0]
    mode = cfg.mode or Mode.RIGHT_HAND_SIDE
    rows = []
    if Model.GA in cfg.models:
        totals = _ga_tallies(cfg, "compare", (Construction.AGENT_OBJECT_ODD,), (measure,), mode)
        for (q, n), cell in totals.items():
            correct = cell[(Construction.AGENT_OBJECT_ODD, measure)][0]
            for regime in cfg.regimes:
                rows.append(Row(f"compare-{regime}", "GA", q, "ao-odd", mode.value, measure.value, n, cfg.trials, cfg.seed,
                                100.0 * correct / cfg.trials))
    k = cfg.length_multiplier
    tasks = []
    for model in cfg.models:
        if model is Model.GA:
            continue
        for q in cfg.questions:
            for n in cfg.sizes:
                for regime in cfg.regimes:
                    d = n if regime == "equal" else k * n
                    for lo, hi in _chunks(cfg.trials):
                        tasks.append((regime, n, _VectorTask(
                            f"compare/{q}/{model.value}", model, q, d, lo, hi, cfg.baseline_construction, cfg.seed)))
    hits: dict = {}
    for (regime, n, task), h in zip(tasks, _execute(_run_vector, [t for _, _, t in tasks], cfg.jobs)):
        key = (regime, task.model, task.question, n)
        hits[key] = hits.get(key, 0) + h
    measure_name = {Model.HRR: "dot", Model.BSC: "agreement"}
    for (regime, model, q, n), h in hits.items():
        rows.append(Row(f"compare-{regime}", model.name, q, cfg.baseline_construction.value, "-", measure_name[model], n,
                        cfg.trials, cfg.seed, 100.0 * h / cfg.trials))
    return _sorted(rows)


def run_estimate(cfg: ExperimentConfig) -> list[Row]:
    """Closed-form potential-answer estimates only; no sampling."""
    rows = []
    for con in cfg.constructions:
        profile = _profile_for(con)
        for q in cfg.questions:
            case = get_question(q)
            if case.estimator is None:
                continue
            for n in cfg.sizes:
                value = expected_potential_answers_general(profile, case.estimator, n)
                rows.append(Row("estimate", "estimate", q, con.value, case.mode.value, "inner", n, 0, cfg.seed, value))
    return _sorted(rows)


RUNNERS = {
    "recognize": run_recognition,
    "potential": run_potential_answers,
    "cancel": run_cancellation,
    "compare": run_comparison,
    "estimate": run_estimate,
}


def run(cfg: ExperimentConfig) -> list[Row]:
    log.info("running %s for %s, N=%d..%d, %d trials, seed %d",
             cfg.kind, ",".join(cfg.questions), cfg.n_min, cfg.n_max, cfg.trials, cfg.seed)
    return RUNNERS[cfg.kind](cfg)


def _sorted(rows: Iterable[Row]) -> list[Row]:
    return sorted(rows, key=lambda r: (r.experiment, r.model, r.question, r.N, r.construction, r.mode, r.measure))


def write_csv(rows: Iterable[Row], stream=None) -> str:
    buf = io.StringIO() if stream is None else stream
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue() if stream is None else ""


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def value_of(rows: Iterable[Row], **match) -> float:
    """Value of the single row whose fields equal ``match``."""
    hits = [r for r in rows if all(getattr(r, k) == v for k, v in match.items())]
    if len(hits) != 1:
        raise LookupError(f"{len(hits)} rows match {match}")
    return hits[0].value

