"""Seeded randomized property run over projective monomial curves."""

import logging
import random

from .analysis import run_analysis
from .config import EngineConfig, resolve_config
from .errors import InconsistencyError, ResourceError
from .models import HarnessReport, NumericalCurveInput

logger = logging.getLogger(__name__)


def sample_curves(
    seed: int, instances: int, max_generators: int, max_exponent: int
) -> list[list[int]]:
    """Exponent sets starting at 0, drawn from 0..max_exponent."""
    rng = random.Random(seed)
    curves = []
    for _ in range(instances):
        k = rng.randint(2, max_generators)
        chosen = sorted(rng.sample(range(max_exponent + 1), k))
        curves.append([e - chosen[0] for e in chosen])
    return curves


def run_harness(
    seed: int | None = None,
    instances: int | None = None,
    config: EngineConfig | None = None,
) -> HarnessReport:
    """Analyze random curves and collect every violated cross-check.

    Each analysis already raises on an engine disagreement or a failed
    structure audit; those are recorded here instead of stopping the run.
    """
    config = resolve_config(config)
    seed = config.seed if seed is None else seed
    instances = instances or config.harness_instances
    report = HarnessReport(seed=seed, instances=instances)
    curves = sample_curves(
        seed, instances, config.harness_max_generators, config.harness_max_exponent
    )
    for exponents in curves:
        inp = NumericalCurveInput(exponents=exponents)
        try:
            result = run_analysis(inp, config)
        except ResourceError as e:
            logger.info("skipping %s: %s", exponents, e)
            report.resource_skipped += 1
            continue
        except InconsistencyError as e:
            logger.error("violation on %s: %s", exponents, e)
            report.violations.append(f"{exponents}: {e}")
            continue
        if not result.is_cm:
            continue
        report.cohen_macaulay += 1
        if result.is_nearly_gorenstein:
            report.nearly_gorenstein += 1
        semigroup = result.semigroup
        if semigroup is not None and semigroup.trace_set is not None:
            if result.cross_engine_agreement is False or (
                result.is_nearly_gorenstein is not None
                and semigroup.trace_set.nearly_gorenstein != result.is_nearly_gorenstein
            ):
                report.violations.append(f"{exponents}: engines disagree")
    logger.info(
        "harness seed=%d: %d CM, %d NG, %d skipped, %d violations",
        seed,
        report.cohen_macaulay,
        report.nearly_gorenstein,
        report.resource_skipped,
        len(report.violations),
    )
    return report
