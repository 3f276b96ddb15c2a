"""Run the grid sweeps for orders 2, 3 and 4 and save witness matrices."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from chmreal.search import format_report, grid_sweep, write_witnesses


@dataclass
class SweepConfig:
    grids: dict[int, int] = field(default_factory=lambda: {2: 24, 3: 12, 4: 8})
    threads: int = 1
    out: Path = Path("results/sweeps")


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    ap.add_argument("--quick", action="store_true", help="use small grids (q=8, 6, 4)")
    a = ap.parse_args(argv)
    cfg = SweepConfig(threads=a.threads, out=a.out)
    if a.quick:
        cfg.grids = {2: 8, 3: 6, 4: 4}
    cfg.out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for n, q in cfg.grids.items():
        t0 = time.perf_counter()
        rep = grid_sweep(n, q, threads=cfg.threads)
        paths = write_witnesses(rep, cfg.out / f"n{n}_q{q}")
        print(format_report(rep, paths))
        print(f"elapsed {time.perf_counter() - t0:.1f} s\n")
        summary[f"n{n}"] = rep.as_dict(paths)
    cfg_dict = {k: str(v) if isinstance(v, Path) else v for k, v in asdict(cfg).items()}
    (cfg.out / "summary.json").write_text(json.dumps({"config": cfg_dict, "sweeps": summary}, indent=2))


if __name__ == "__main__":
    main()
