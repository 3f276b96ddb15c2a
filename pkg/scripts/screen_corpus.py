"""Screen every order-six construction and any matrix files given for MUB-trio exclusions."""

from __future__ import annotations

import argparse
from pathlib import Path

from chmreal.constructions import S_TABLE, s6_with_count
from chmreal.matrix import load_matrix
from chmreal.mubscreen import NotACHM, screen


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("files", nargs="*", type=Path)
    a = ap.parse_args(argv)
    for m in sorted(S_TABLE[6]):
        print(f"s6[{m:2d}]  {screen(s6_with_count(m)).line()}")
    for f in a.files:
        try:
            print(f"{f}  {screen(load_matrix(f)).line()}")
        except (NotACHM, ValueError) as exc:
            print(f"{f}  skipped: {exc}")


if __name__ == "__main__":
    main()
