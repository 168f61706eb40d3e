#!/usr/bin/env python3
"""Regenerates the toy parameter tables and the element group map.

Run from the repository root: python3 tools/make_toy_tables.py
"""
import json
import math

Z = {
    "H": 1, "He": 2, "Li": 3, "Be": 4, "B": 5, "C": 6, "N": 7, "O": 8,
    "F": 9, "Ne": 10, "Na": 11, "Mg": 12, "Al": 13, "Si": 14, "P": 15,
    "S": 16, "Cl": 17, "Ar": 18, "K": 19, "Ca": 20, "Sc": 21, "Ti": 22,
    "V": 23, "Cr": 24, "Mn": 25, "Fe": 26, "Co": 27, "Ni": 28, "Cu": 29,
    "Zn": 30, "Ga": 31, "Ge": 32, "As": 33, "Se": 34, "Br": 35, "Kr": 36,
    "Rb": 37, "Sr": 38, "Y": 39, "Zr": 40, "Nb": 41, "Mo": 42, "Tc": 43,
    "Ru": 44, "Rh": 45, "Pd": 46, "Ag": 47, "Cd": 48, "In": 49, "Sn": 50,
    "Sb": 51, "Te": 52, "I": 53, "Xe": 54, "Cs": 55, "Ba": 56, "La": 57,
    "Ce": 58, "Pr": 59, "Nd": 60, "Hf": 72, "Ta": 73, "W": 74, "Re": 75,
    "Os": 76, "Ir": 77, "Pt": 78, "Au": 79, "Hg": 80, "Tl": 81, "Pb": 82,
    "Bi": 83, "At": 85, "Rn": 86, "Ra": 88,
}

GROUPS = {
    "alkali": ["Li", "Na", "K", "Rb", "Cs"],
    "alkaline_earth": ["Be", "Mg", "Ca", "Sr", "Ba", "Ra"],
    "transition": ["Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
                   "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
                   "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg"],
    "lanthanide": ["La", "Ce", "Pr", "Nd"],
    "post_transition": ["Al", "Ga", "In", "Sn", "Tl", "Pb", "Bi"],
    "metalloid": ["B", "Si", "Ge", "As", "Sb", "Te"],
    "nonmetal": ["H", "C", "N", "O", "P", "S", "Se"],
    "halogen": ["F", "Cl", "Br", "I", "At"],
    "noble_gas": ["He", "Ne", "Ar", "Kr", "Xe", "Rn"],
}

# group templates: shells, n_valence, onsite (s,p,d), U, hop, hop_decay,
# overlap, overlap_decay, rep_a, rep_b
TEMPLATES = {
    "alkali":          (["s", "p"], 0.5, (-0.30, -0.16, 0), 0.30, 0.25, 2.2, 0.16, 2.3, 5.0, 1.7),
    "alkaline_earth":  (["s", "p"], 1.5, (-0.34, -0.18, 0), 0.34, 0.30, 2.1, 0.18, 2.2, 10.0, 1.75),
    "transition":      (["s", "p", "d"], 4.0, (-0.38, -0.20, -0.26), 0.42, 0.42, 1.9, 0.22, 2.0, 22.0, 1.85),
    "lanthanide":      (["s", "p", "d"], 3.5, (-0.36, -0.19, -0.24), 0.38, 0.36, 2.0, 0.20, 2.1, 16.0, 1.8),
    "post_transition": (["s", "p"], 2.5, (-0.40, -0.22, 0), 0.40, 0.38, 1.9, 0.22, 2.0, 20.0, 1.85),
    "metalloid":       (["s", "p"], 2.5, (-0.42, -0.24, 0), 0.46, 0.45, 1.8, 0.25, 1.9, 24.0, 1.9),
    "nonmetal":        (["s", "p"], 3.0, (-0.46, -0.27, 0), 0.52, 0.50, 1.7, 0.26, 1.8, 30.0, 1.95),
    "halogen":         (["s", "p"], 3.0, (-0.50, -0.30, 0), 0.60, 0.48, 1.65, 0.24, 1.75, 32.0, 2.0),
    "noble_gas":       (["s", "p"], 3.5, (-0.54, -0.33, 0), 0.68, 0.32, 1.55, 0.16, 1.65, 28.0, 2.1),
}


def jitter(i, k, amp):
    # deterministic, smooth per-element variation
    return 1.0 + amp * math.sin(2.399963229728653 * (i + 1) * (k + 1))


def make_element(sym, group, i):
    shells, nval, onsite, u, hop, hdec, ov, odec, ra, rb = TEMPLATES[group]
    if sym == "H":  # light element: shallow levels, fast-decaying repulsion
        return {
            "symbol": "H", "z": 1, "shells": ["s", "p"],
            "onsite": {"s": -0.42, "p": -0.20},
            "hubbard_u": 0.55, "n_valence": 0.5, "hop_scale": 0.60,
            "hop_decay": 1.5, "overlap_scale": 0.25, "overlap_decay": 1.6,
            "rep_a": 0.7, "rep_b": 2.2,
        }
    ons = {}
    for li, sh in enumerate(["s", "p", "d"]):
        if sh in shells:
            ons[sh] = round(onsite[li] * jitter(i, li, 0.05), 6)
    e = {
        "symbol": sym, "z": Z[sym], "shells": shells, "onsite": ons,
        "hubbard_u": round(u * jitter(i, 3, 0.08), 6),
        "n_valence": nval,
        "hop_scale": round(hop * jitter(i, 4, 0.10), 6),
        "hop_decay": round(hdec * jitter(i, 5, 0.06), 6),
        "overlap_scale": round(ov * jitter(i, 6, 0.08), 6),
        "overlap_decay": round(odec * jitter(i, 7, 0.05), 6),
        "rep_a": round(ra * jitter(i, 8, 0.10), 6),
        "rep_b": round(rb * jitter(i, 9, 0.05), 6),
    }
    return e


def main():
    groups_out = {}
    elements = []
    i = 0
    for group, syms in GROUPS.items():
        for sym in syms:
            elements.append(make_element(sym, group, i))
            groups_out[sym] = group
            i += 1
    elements.sort(key=lambda e: e["z"])
    assert len(elements) == 75, len(elements)

    with open("data/params_span75.json", "w") as f:
        json.dump({"elements": elements}, f, indent=2)
        f.write("\n")

    toy = [e for e in elements
           if e["symbol"] in ("H", "Li", "C", "N", "O", "F", "Na", "Si", "Cl", "Ar")]
    assert len(toy) == 10
    with open("data/params_toy10.json", "w") as f:
        json.dump({"elements": toy}, f, indent=2)
        f.write("\n")

    with open("data/element_groups.json", "w") as f:
        json.dump(dict(sorted(groups_out.items())), f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
