"""End-to-end classification pipelines with persistent, resumable stages.

Each pipeline writes its intermediate and final results into a
:class:`evenstab.classify.census.Census` directory.  Sealed stages are
trusted on re-entry, so an interrupted run resumes at the first incomplete
stage; the branch stage of the nonexistence search additionally resumes
mid-stage, after the last fully written branch record.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from ..errors import InternalInconsistencyError
from .census import Census
from .configs import Config, enumerate_solid_configs, enumerate_solid_pairs
from .polarity import polarity_solutions
from .refute import refute_branch

Progress = Optional[Callable[[str], None]]

STAGE_FOUR_CONFIGS = "four-solids-configs"
STAGE_FOUR_LABELINGS = "four-solids-labelings"
STAGE_SIX_PAIRS = "six-solids-pairs"
STAGE_SIX_CONFIGS = "six-solids-configs"
STAGE_SIX_LABELINGS = "six-solids-labelings"
STAGE_REFUTE_BRANCHES = "refute-714-branches"
STAGE_REFUTE_REPORT = "refute-714-report"

COROLLARY_805 = (
    "no [[8,0,5]]_4 exists: projecting away one block of such a code "
    "would yield a [[7,1,4]]_4"
)


def _labeling_stage(
    census: Census, stage: str, configs: List[dict], n: int, progress: Progress
) -> List[dict]:
    if census.complete(stage):
        return census.load(stage)
    records = []
    for idx, rec in enumerate(configs):
        cfg = Config(n, tuple(rec["params"]))
        for marks in polarity_solutions(cfg):
            records.append({"config": idx, "marks": list(marks)})
        if progress and (idx + 1) % 40 == 0:
            progress(
                f"{stage}: {idx + 1}/{len(configs)} configurations, "
                f"{len(records)} labelings so far"
            )
    return census.store(stage, records)


def run_four_solids(census: Census, *, progress: Progress = None) -> Dict[str, object]:
    """Classify 4-solid configurations and their quantum-set labelings."""
    if census.complete(STAGE_FOUR_CONFIGS):
        configs = census.load(STAGE_FOUR_CONFIGS)
    else:
        reps = enumerate_solid_configs(4, progress=progress)
        configs = census.store(
            STAGE_FOUR_CONFIGS, [{"params": list(c.params)} for c in reps]
        )
    labelings = _labeling_stage(
        census, STAGE_FOUR_LABELINGS, configs, 4, progress
    )
    counts = [0] * len(configs)
    for rec in labelings:
        counts[rec["config"]] += 1
    return {
        "task": "four-solids",
        "configurations": len(configs),
        "labelings": len(labelings),
        "labelings_per_configuration": counts,
    }


def run_six_solids(census: Census, *, progress: Progress = None) -> Dict[str, object]:
    """Classify 6-solid configurations and their quantum-set labelings."""
    if census.complete(STAGE_SIX_PAIRS):
        pairs = [tuple(rec["params"]) for rec in census.load(STAGE_SIX_PAIRS)]
    else:
        pairs = enumerate_solid_pairs(progress=progress)
        census.store(STAGE_SIX_PAIRS, [{"params": list(p)} for p in pairs])
    if census.complete(STAGE_SIX_CONFIGS):
        configs = census.load(STAGE_SIX_CONFIGS)
    else:
        reps = enumerate_solid_configs(6, pairs=pairs, progress=progress)
        configs = census.store(
            STAGE_SIX_CONFIGS, [{"params": list(c.params)} for c in reps]
        )
    labelings = _labeling_stage(
        census, STAGE_SIX_LABELINGS, configs, 6, progress
    )
    return {
        "task": "six-solids",
        "five_solid_representatives": len(pairs),
        "configurations": len(configs),
        "labelings": len(labelings),
    }


def run_refutation(
    census: Census, *, progress: Progress = None, budget_dim: int = 26
) -> Dict[str, object]:
    """Prove [[7,1,4]]_4 nonexistence by exhausting every branch."""
    if census.complete(STAGE_REFUTE_REPORT):
        return census.load(STAGE_REFUTE_REPORT)[0]

    six = run_six_solids(census, progress=progress)
    configs = census.load(STAGE_SIX_CONFIGS)
    labelings = census.load(STAGE_SIX_LABELINGS)

    if census.complete(STAGE_REFUTE_BRANCHES):
        branch_records = census.load(STAGE_REFUTE_BRANCHES)
    else:
        branch_records = census.load_partial(STAGE_REFUTE_BRANCHES)
        for i, rec in enumerate(branch_records):
            if rec["branch"] != i:
                raise InternalInconsistencyError(
                    f"branch stage out of order at line {i}: found {rec['branch']}"
                )
        census.rewrite_partial(STAGE_REFUTE_BRANCHES, branch_records)
        if progress and branch_records:
            progress(
                f"{STAGE_REFUTE_BRANCHES}: resuming after branch "
                f"{len(branch_records) - 1}"
            )
        for i in range(len(branch_records), len(labelings)):
            rec = labelings[i]
            cfg = Config(6, tuple(configs[rec["config"]]["params"]))
            cert = refute_branch(cfg, tuple(rec["marks"]), budget_dim=budget_dim)
            cert["branch"] = i
            cert["config"] = rec["config"]
            census.append(STAGE_REFUTE_BRANCHES, cert)
            branch_records.append(cert)
            if progress and (i + 1) % 100 == 0:
                progress(f"{STAGE_REFUTE_BRANCHES}: {i + 1}/{len(labelings)} branches")
        census.seal(STAGE_REFUTE_BRANCHES)

    survivors = sum(rec["n_nonorth_span"] for rec in branch_records)
    report = {
        "task": "refute-714",
        "verdict": "NONEXISTENT" if survivors == 0 else "CANDIDATE-FOUND",
        "branches": len(branch_records),
        "configurations": six["configurations"],
        "labelings": six["labelings"],
        "orthogonal_solutions": sum(r["n_orth"] for r in branch_records),
        "nondegenerate_solutions": sum(r["n_quad"] for r in branch_records),
        "general_position_survivors": survivors,
        "corollary": COROLLARY_805 if survivors == 0 else "withheld",
    }
    census.store(STAGE_REFUTE_REPORT, [report])
    return report
