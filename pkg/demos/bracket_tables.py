"""Bracket tables for the quaternionic builds, against the shipped goldens.

The tables are rendered from the structure constants and compared byte for
byte with the files under src/solvgeom/tables/.  Twisting primes the labels
of the odd vectors and flips the signs their brackets pick up.
"""

from importlib import resources

from solvgeom.symtwist import (
    bracket_table,
    build_sl_nH,
    build_so_nH,
    paper_twist_sl_nH,
    twist,
)

for key, rda in [("so4h", build_so_nH(4)),
                 ("so5h", build_so_nH(5)),
                 ("sl3h", build_sl_nH(3))]:
    rendered = bracket_table(rda)
    golden = (resources.files("solvgeom") / "tables" / f"{key}_brackets.tsv").read_bytes()
    print(f"{key}: {len(rendered.splitlines())} lines, "
          f"byte-match {rendered.encode() == golden}")

print()
rda = build_sl_nH(3)
print("sl(3,H) bracket table:")
print(bracket_table(rda))

tw = twist(rda, paper_twist_sl_nH(rda))
lines = bracket_table(tw).splitlines()
print("after the twist (primed rows pick up sign changes):")
print("\n".join(lines[:6]))
print("...")
