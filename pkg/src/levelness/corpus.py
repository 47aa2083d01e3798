"""Built-in corpus of inputs with expected facts, and the runner that checks them."""

import asyncio
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from typing import Any

from pydantic import TypeAdapter

from .analysis import run_analysis
from .config import EngineConfig, resolve_config
from .errors import InputError, LevelnessError, ResourceError
from .models import CorpusItem, CorpusResult, FactResult

logger = logging.getLogger(__name__)

_ITEMS = TypeAdapter(list[CorpusItem])
_MISSING = object()


def load_corpus() -> list[CorpusItem]:
    """Every item shipped in the package data directory, in file order."""
    items: list[CorpusItem] = []
    data = resources.files("levelness") / "data"
    for entry in sorted(data.iterdir(), key=lambda p: p.name):
        if not entry.name.endswith(".json"):
            continue
        items.extend(_ITEMS.validate_json(entry.read_text(encoding="utf-8")))
    seen: set[str] = set()
    for item in items:
        if item.id in seen:
            raise InputError(f"Duplicate corpus id {item.id!r}")
        seen.add(item.id)
    return items


def select_items(
    items: list[CorpusItem], filter: str | None = None, include_slow: bool = False
) -> list[CorpusItem]:
    """Items whose id, reference or one of whose tags contains `filter`.

    An empty selection is an InputError so that a mistyped filter cannot pass.
    """
    selected = []
    for item in items:
        if item.slow and not include_slow:
            continue
        if filter and not _matches(item, filter.lower()):
            continue
        selected.append(item)
    if not selected:
        hint = "" if include_slow else " (slow items need --include-slow)"
        raise InputError(f"No corpus item matches {filter!r}{hint}")
    return selected


def _matches(item: CorpusItem, text: str) -> bool:
    fields = [item.id, item.reference, *item.tags]
    return any(text in f.lower() for f in fields)


def _betti_row(report: dict[str, Any], i: int) -> dict[str, int]:
    return {
        str(e["j"]): e["rank"] for e in report.get("betti_table", []) if e["i"] == i
    }


def _walk(value: Any, parts: list[str]) -> Any:
    for part in parts:
        if isinstance(value, dict):
            if part not in value:
                return _MISSING
            value = value[part]
        elif isinstance(value, list):
            try:
                value = value[int(part)]
            except (ValueError, IndexError):
                return _MISSING
        else:
            return _MISSING
    return value


def lookup(report: dict[str, Any], name: str) -> Any:
    """Resolve a dotted fact name against a report dumped with field names.

    ``betti.i`` is row i of the Betti table keyed by degree.
    ``contains_maximal_power.k`` asks whether the punctured index is at most k.
    ``len.path`` is the length of the list at path.
    """
    parts = name.split(".")
    if parts[0] == "len" and len(parts) >= 2:
        value = _walk(report, parts[1:])
        return len(value) if isinstance(value, list) else _MISSING
    if parts[0] == "betti" and len(parts) >= 2:
        return _walk(_betti_row(report, int(parts[1])), parts[2:])
    if parts[0] == "contains_maximal_power" and len(parts) == 2:
        index = report.get("punctured_index")
        if index is None:
            return None
        return index <= int(parts[1])
    return _walk(report, parts)


def run_item(item: CorpusItem, config: EngineConfig | None = None) -> CorpusResult:
    """Analyze one item and compare every fact."""
    config = resolve_config(config)
    start = time.perf_counter()
    try:
        report = run_analysis(item.input, config).model_dump(mode="json")
    except ResourceError as e:
        status = "resource" if item.allow_resource_error else "error"
        logger.warning("%s: %s", item.id, e)
        return CorpusResult(
            id=item.id,
            reference=item.reference,
            status=status,
            message=str(e),
            exit_code=0 if item.allow_resource_error else e.exit_code,
            seconds=round(time.perf_counter() - start, 6),
        )
    except LevelnessError as e:
        logger.error("%s: %s", item.id, e)
        return CorpusResult(
            id=item.id,
            reference=item.reference,
            status="error",
            message=str(e),
            exit_code=e.exit_code,
            seconds=round(time.perf_counter() - start, 6),
        )

    results = []
    for fact in item.facts:
        actual = lookup(report, fact.name)
        results.append(
            FactResult(
                name=fact.name,
                expected=fact.value,
                actual=None if actual is _MISSING else actual,
                passed=actual is not _MISSING and actual == fact.value,
                source=fact.source,
            )
        )
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.error("%s: facts failed %s", item.id, failed)
    return CorpusResult(
        id=item.id,
        reference=item.reference,
        status="fail" if failed else "pass",
        facts=results,
        message=f"failed: {', '.join(failed)}" if failed else None,
        exit_code=1 if failed else 0,
        seconds=round(time.perf_counter() - start, 6),
    )


def _run_payload(payload: str, config: dict[str, Any]) -> dict[str, Any]:
    item = CorpusItem.model_validate_json(payload)
    return run_item(item, EngineConfig(**config)).model_dump()


async def run_corpus_async(
    filter: str | None = None,
    include_slow: bool = False,
    jobs: int | None = None,
    config: EngineConfig | None = None,
) -> list[CorpusResult]:
    """Run the selected items, in worker processes when jobs > 1."""
    config = resolve_config(config)
    jobs = jobs or config.jobs
    items = select_items(load_corpus(), filter, include_slow)
    logger.info("running %d corpus items with %d job(s)", len(items), jobs)
    if jobs == 1:
        return [await asyncio.to_thread(run_item, item, config) for item in items]

    loop = asyncio.get_running_loop()
    settings = config.model_dump()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            loop.run_in_executor(pool, _run_payload, item.model_dump_json(), settings)
            for item in items
        ]
        dumped = await asyncio.gather(*futures)
    return [CorpusResult.model_validate(d) for d in dumped]


def run_corpus(
    filter: str | None = None,
    include_slow: bool = False,
    jobs: int | None = None,
    config: EngineConfig | None = None,
) -> list[CorpusResult]:
    return asyncio.run(run_corpus_async(filter, include_slow, jobs, config))


def corpus_exit_code(results: list[CorpusResult]) -> int:
    """Worst exit code among the results; inconsistencies outrank everything."""
    codes = {r.exit_code for r in results}
    for code in (3, 2, 1):
        if code in codes:
            return code
    return 0


def summarize(results: list[CorpusResult]) -> dict[str, Any]:
    counts: dict[str, int] = {}
    for r in results:
        counts[r.status] = counts.get(r.status, 0) + 1
    return {"total": len(results), **counts}


def dump_results(results: list[CorpusResult]) -> str:
    return json.dumps(
        {
            "summary": summarize(results),
            "results": [r.model_dump(by_alias=True, mode="json") for r in results],
        },
        indent=2,
    )
