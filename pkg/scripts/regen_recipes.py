"""Rebuild the count recipe table and report any difference from the shipped copy."""

from __future__ import annotations

import argparse
from importlib import resources
from pathlib import Path

from chmreal import constructions as cons


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--write", action="store_true", help="overwrite the shipped table")
    a = ap.parse_args(argv)
    path = resources.files("chmreal") / "data" / cons.RECIPE_FILE
    fresh = cons.format_recipes(cons.regenerate_recipes())
    same = fresh == path.read_text()
    print(fresh, end="")
    print(f"shipped table {'matches' if same else 'differs'}")
    if a.write and not same:
        Path(str(path)).write_text(fresh)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
