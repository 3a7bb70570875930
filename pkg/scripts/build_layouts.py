"""Regenerate the shipped keyboard adjacency files from physical row geometry.

Each layout is given as its four unshifted rows (number row, top, home,
bottom) on an ISO board. Key i of a row sits at horizontal position
i + ROW_OFFSET[row]; two keys on neighboring rows are adjacent when their
centers are less than one key-width apart, which yields the usual two upper
and two lower (diagonal/vertical) neighbors plus left/right on the same row.
Only alphabetic keys are written, and only alphabetic neighbors are kept.

    python scripts/build_layouts.py
"""
from __future__ import annotations

from pathlib import Path

ROW_OFFSET = (0.0, 1.5, 1.75, 1.25)

LAYOUTS = {
    "de_qwertz": (
        "German QWERTZ (ISO, T1)",
        ["^1234567890ß´", "qwertzuiopü+", "asdfghjklöä#", "<yxcvbnm,.-"],
    ),
    "fr_azerty": (
        "French AZERTY (ISO)",
        ["²&é\"'(-è_çà)=", "azertyuiop^$", "qsdfghjklmù*", "<wxcvbn,;:!"],
    ),
    "cs_qwertz": (
        "Czech QWERTZ (ISO)",
        [";+ěščřžýáíé=´", "qwertzuiopú)", "asdfghjklů§¨", "\\yxcvbnm,.-"],
    ),
}


def adjacency(rows: list[str]) -> dict[str, list[str]]:
    keys = []
    for r, row in enumerate(rows):
        for i, ch in enumerate(row):
            keys.append((ch, r, i + ROW_OFFSET[r]))
    adj: dict[str, list[str]] = {}
    for ch, r, x in keys:
        if not ch.isalpha():
            continue
        # order: same row left/right, then row above, then row below
        same = [o for o, r2, x2 in keys if r2 == r and abs(x2 - x) == 1.0]
        above = [o for o, r2, x2 in keys if r2 == r - 1 and abs(x2 - x) < 1.0]
        below = [o for o, r2, x2 in keys if r2 == r + 1 and abs(x2 - x) < 1.0]
        near = [o for o in same + above + below if o.isalpha() and o != ch]
        if near:
            adj[ch] = near
    return adj


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "src" / "charnoise" / "data" / "layouts"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, (title, rows) in LAYOUTS.items():
        adj = adjacency(rows)
        lines = [
            f"# {title}",
            "# generated by scripts/build_layouts.py: horizontal, vertical and diagonal",
            "# physical neighbors, alphabetic keys only",
        ]
        lines += ["\t".join([ch, *nbrs]) for ch, nbrs in adj.items()]
        (out_dir / f"{name}.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"{name}: {len(adj)} keys")


if __name__ == "__main__":
    main()
