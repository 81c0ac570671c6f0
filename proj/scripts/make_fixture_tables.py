#!/usr/bin/env python3
"""Regenerates the bundled desk-scale AoA and word-vector fixtures.

Both tables are synthetic stand-ins with the real formats: AoA values are
plausible hand-assigned ages, and embeddings are 300-dim vectors built as a
semantic-category centroid plus noise, so words in the same category sit
close together. Drop in real norms / GloVe files with the same layout.
"""
import pathlib
import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"
DIM = 300

# word -> (category, mean_aoa, std_aoa)
WORDS = {
    # people
    "boy": ("person", 2.9, 0.9), "boys": ("person", 3.2, 1.0), "son": ("person", 3.9, 1.3),
    "brother": ("person", 3.6, 1.2), "kid": ("person", 3.4, 1.1), "kids": ("person", 3.5, 1.1),
    "child": ("person", 3.8, 1.3), "children": ("person", 4.1, 1.4), "youngster": ("person", 8.9, 2.2),
    "girl": ("person", 3.0, 0.9), "girls": ("person", 3.3, 1.0), "daughter": ("person", 4.6, 1.5),
    "sister": ("person", 3.5, 1.1), "mother": ("person", 2.6, 0.8), "mom": ("person", 2.1, 0.6),
    "mommy": ("person", 2.0, 0.5), "mum": ("person", 2.2, 0.6), "mama": ("person", 1.9, 0.5),
    "woman": ("person", 4.4, 1.4), "lady": ("person", 4.2, 1.3),
    # kitchen objects
    "cookie": ("food", 2.7, 0.8), "cookies": ("food", 2.8, 0.8), "biscuit": ("food", 3.6, 1.1),
    "biscuits": ("food", 3.7, 1.1), "jar": ("object", 4.7, 1.5), "jars": ("object", 5.0, 1.5),
    "cupboard": ("object", 5.2, 1.6), "cupboards": ("object", 5.4, 1.6), "cabinet": ("object", 6.8, 1.9),
    "cabinets": ("object", 7.0, 1.9), "shelf": ("object", 5.9, 1.7), "shelves": ("object", 6.1, 1.7),
    "stool": ("object", 5.6, 1.7), "chair": ("object", 3.3, 1.0), "ladder": ("object", 5.3, 1.6),
    "seat": ("object", 4.8, 1.5), "water": ("liquid", 2.4, 0.7), "tap": ("object", 4.9, 1.5),
    "faucet": ("object", 6.6, 1.9), "sink": ("object", 5.1, 1.5), "basin": ("object", 8.2, 2.1),
    "towel": ("object", 4.3, 1.3), "dish": ("object", 4.9, 1.4), "dishes": ("object", 4.7, 1.4),
    "cup": ("object", 2.9, 0.9), "cups": ("object", 3.1, 0.9), "bowl": ("object", 3.6, 1.1),
    "bowls": ("object", 3.8, 1.1), "plate": ("object", 3.9, 1.2), "plates": ("object", 4.1, 1.2),
    "saucer": ("object", 6.9, 1.9),
    # actions
    "fall": ("action", 3.3, 1.0), "falling": ("action", 3.6, 1.1), "fell": ("action", 3.5, 1.1),
    "falls": ("action", 3.7, 1.1), "tipping": ("action", 7.4, 2.0), "tip": ("action", 6.5, 1.9),
    "toppling": ("action", 9.6, 2.3), "grab": ("action", 5.0, 1.5), "grabbing": ("action", 5.3, 1.6),
    "take": ("action", 3.4, 1.0), "taking": ("action", 3.8, 1.1), "steal": ("action", 5.8, 1.7),
    "stealing": ("action", 6.0, 1.7), "reach": ("action", 5.2, 1.6), "reaching": ("action", 5.5, 1.6),
    "overflow": ("action", 9.1, 2.3), "overflowing": ("action", 9.4, 2.3), "running": ("action", 4.0, 1.2),
    "spilling": ("action", 6.2, 1.8), "spill": ("action", 5.6, 1.7), "spilled": ("action", 5.9, 1.7),
    "flooding": ("action", 8.8, 2.2), "flood": ("action", 7.9, 2.1), "wash": ("action", 3.8, 1.1),
    "washing": ("action", 4.1, 1.2), "washes": ("action", 4.3, 1.2), "cleaning": ("action", 4.6, 1.4),
    "dry": ("action", 4.2, 1.3), "drying": ("action", 4.9, 1.5), "dries": ("action", 5.0, 1.5),
    "wiping": ("action", 5.8, 1.7), "blowing": ("action", 5.1, 1.6),
    # outside view
    "window": ("outside", 4.1, 1.3), "windows": ("outside", 4.4, 1.3), "curtain": ("outside", 6.3, 1.8),
    "curtains": ("outside", 6.1, 1.8), "drapes": ("outside", 9.0, 2.2), "wind": ("outside", 4.9, 1.5),
    "breeze": ("outside", 7.8, 2.0), "outside": ("outside", 3.9, 1.2), "garden": ("outside", 5.0, 1.5),
    "yard": ("outside", 5.6, 1.7), "path": ("outside", 6.2, 1.8), "tree": ("outside", 3.6, 1.1),
    "trees": ("outside", 3.8, 1.1), "house": ("outside", 3.2, 1.0), "houses": ("outside", 3.6, 1.1),
    "lawn": ("outside", 7.1, 1.9), "grass": ("outside", 3.9, 1.2), "bushes": ("outside", 5.9, 1.7),
    "neighbour": ("outside", 6.8, 1.9), "neighbor": ("outside", 6.8, 1.9),
    # filler vocabulary used by the synthetic corpus
    "the": ("function", 2.5, 0.9), "a": ("function", 2.6, 0.9), "and": ("function", 2.8, 1.0),
    "is": ("function", 2.9, 1.0), "there": ("function", 3.0, 1.0), "he": ("function", 2.7, 0.9),
    "she": ("function", 2.8, 0.9), "it": ("function", 2.6, 0.9), "on": ("function", 2.9, 1.0),
    "of": ("function", 3.4, 1.1), "to": ("function", 3.1, 1.0), "in": ("function", 2.8, 1.0),
    "kitchen": ("descriptive", 4.4, 1.3), "afternoon": ("descriptive", 5.9, 1.7),
    "careless": ("descriptive", 9.3, 2.3), "distracted": ("descriptive", 10.4, 2.5),
    "busy": ("descriptive", 5.7, 1.7), "unaware": ("descriptive", 11.2, 2.6),
    "happening": ("descriptive", 6.9, 1.9), "apparently": ("descriptive", 10.8, 2.5),
    "meanwhile": ("descriptive", 10.1, 2.4), "precarious": ("descriptive", 13.6, 2.9),
    "uh": ("vague", 2.2, 0.8), "um": ("vague", 2.3, 0.8), "thing": ("vague", 3.0, 1.0),
    "something": ("vague", 3.9, 1.2), "stuff": ("vague", 4.1, 1.3), "know": ("vague", 3.2, 1.0),
    "like": ("vague", 3.3, 1.0), "oh": ("vague", 2.4, 0.8),
}


def main() -> None:
    rng = np.random.default_rng(20190915)
    categories = sorted({c for c, _, _ in WORDS.values()})
    centroids = {c: rng.normal(0.0, 0.5, DIM) for c in categories}
    words = sorted(WORDS)

    with open(ROOT / "aoa_fixture.tsv", "w") as f:
        f.write("# Synthetic desk-scale age-of-acquisition table (years); not real norms.\n")
        f.write("word\tmean_aoa\tstd_aoa\n")
        for w in words:
            _, mean, std = WORDS[w]
            f.write(f"{w}\t{mean:.2f}\t{std:.2f}\n")

    with open(ROOT / "wordvec_fixture.txt", "w") as f:
        f.write("# Synthetic 300-dim embeddings: category centroid + noise; not GloVe.\n")
        f.write(f"{len(words)} {DIM}\n")
        for w in words:
            v = centroids[WORDS[w][0]] + rng.normal(0.0, 0.2, DIM)
            f.write(w + " " + " ".join(f"{x:.5f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
