"""Seeded random-orbit audits: S_6 membership of real counts and the lemma predicates."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from chmreal.search import predicate_audit, s6_membership_audit


@dataclass
class AuditConfig:
    seed: int = 2024
    membership_samples: int = 100_000
    predicate_samples: int = 12_000
    threads: int = 1
    out: Path = Path("results/audits.json")


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in asdict(AuditConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    cfg = AuditConfig(**vars(ap.parse_args(argv)))

    t0 = time.perf_counter()
    rep = s6_membership_audit(cfg.membership_samples, cfg.seed, cfg.threads)
    print(rep.summary())
    print(f"elapsed {time.perf_counter() - t0:.1f} s")

    t0 = time.perf_counter()
    ran, found = predicate_audit(cfg.predicate_samples, cfg.seed)
    for pid in sorted(ran, key=lambda p: p.value):
        print(f"predicate {pid.value:>4}: {ran[pid]} checks")
    for name, v in found:
        print(f"violation on {name}: {v}")
    print(f"violations {len(found)}; elapsed {time.perf_counter() - t0:.1f} s")

    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps({
        "config": {k: str(v) for k, v in asdict(cfg).items()},
        "membership": {"passed": rep.passed, "counts": {str(k): v for k, v in sorted(rep.counts.items())}},
        "predicates": {pid.value: n for pid, n in ran.items()},
        "violations": [f"{name}: {v}" for name, v in found],
    }, indent=2))


if __name__ == "__main__":
    main()
