"""Rewrite the golden files under tests/golden.

Run after an intentional change to the catalog or the report format, then
review the diff before committing.
"""

from pathlib import Path

from tsurf import catalog
from tsurf.covering import classify
from tsurf.surface import serialize_net

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"
REPORTS = ("torus", "l3", "octagon", "strange")


def main():
    GOLDEN.mkdir(exist_ok=True)
    (GOLDEN / "strange.net").write_text(serialize_net(catalog.get("strange")))
    for name in REPORTS:
        rep = classify(catalog.get(name), 2, 60, threads=1)
        (GOLDEN / f"classify_{name}.json").write_text(rep.to_json(), encoding="utf-8")
    print(f"wrote {1 + len(REPORTS)} files to {GOLDEN}")


if __name__ == "__main__":
    main()
