"""Walk through the two stock array families and the validator.

Builds the classic 6x4 array and a small partition array, prints them the way
the text format stores them, and shows what the validator reports when an
array is broken on purpose.
"""

from macc import (
    STAR,
    Pda,
    mn_pda,
    partition_pda,
    serialize_pda,
    star_profile,
    validate_pda,
)


def show(title, p):
    print(f"== {title}: K'={p.cols} F'={p.rows} Z={p.z} S={p.s}")
    print(serialize_pda(p))


def main():
    p = mn_pda(4, 2)
    show("mn_pda(4, 2)", p)
    rep = validate_pda(p)
    print(f"valid: {rep.ok}")
    prof = star_profile(p)
    print(f"stars per row t={prof.t}, index extremes a={prof.a} b={prof.b}\n")

    part, labels = partition_pda(2, 3)
    show("partition_pda(2, 3)", part)
    print("integer s -> checksum vector of its home row:")
    for s, vec in enumerate(labels, start=1):
        print(f"  {s}: {vec}")
    print()

    # break the crossing condition: value 1 repeats inside row 1
    bad = Pda(rows=2, cols=4, entries=((STAR, STAR, 1, 1), (1, 2, STAR, STAR)), z=1, s=2)
    rep = validate_pda(bad)
    print("deliberately broken 2x4 array:")
    print(f"  C1 ok: {rep.c1_ok}, C3 ok: {rep.c3_ok}")
    print(f"  first crossing counterexample: {rep.c3_counterexamples[0]}")


if __name__ == "__main__":
    main()
