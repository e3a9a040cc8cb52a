#!/usr/bin/env python3
"""Regenerate the bundled data files under crates/harness/data.

- iris.csv: copied from scikit-learn's bundled copy, with a named header.
- lexicons/<code>.tsv: top words per language from the wordfreq package,
  transliterated to ASCII and reduced to the 27-symbol alphabet
  (a-z plus space). Each line is `word<TAB>frequency`.

Requires: scikit-learn, wordfreq, unidecode.
"""
import collections
import os
import re
import sys

import sklearn
from unidecode import unidecode
import wordfreq

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "crates", "harness", "data")

# Estonian is not covered by wordfreq; Icelandic takes its slot.
LANGUAGES = [
    ("bg", "bulgarian"), ("cs", "czech"), ("da", "danish"), ("de", "german"),
    ("el", "greek"), ("en", "english"), ("is", "icelandic"), ("fi", "finnish"),
    ("fr", "french"), ("hu", "hungarian"), ("it", "italian"), ("lv", "latvian"),
    ("lt", "lithuanian"), ("nl", "dutch"), ("pl", "polish"), ("pt", "portuguese"),
    ("ro", "romanian"), ("sk", "slovak"), ("sl", "slovene"), ("es", "spanish"),
    ("sv", "swedish"),
]
WORDS_PER_LANGUAGE = 3000


def write_iris():
    src = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data", "iris.csv")
    with open(src) as f:
        header = f.readline().strip().split(",")
        names = header[2:]
        rows = [line.strip().split(",") for line in f if line.strip()]
    with open(os.path.join(ROOT, "iris.csv"), "w") as out:
        out.write("sepal_length,sepal_width,petal_length,petal_width,species\n")
        for r in rows:
            out.write(",".join(r[:4]) + "," + names[int(r[4])] + "\n")


def write_lexicons():
    os.makedirs(os.path.join(ROOT, "lexicons"), exist_ok=True)
    for code, name in LANGUAGES:
        counts = collections.OrderedDict()
        for word in wordfreq.top_n_list(code, WORDS_PER_LANGUAGE * 2):
            ascii_word = re.sub(r"[^a-z]", "", unidecode(word).lower())
            if not ascii_word:
                continue
            counts[ascii_word] = counts.get(ascii_word, 0.0) + wordfreq.word_frequency(word, code)
            if len(counts) >= WORDS_PER_LANGUAGE:
                break
        with open(os.path.join(ROOT, "lexicons", f"{name}.tsv"), "w") as out:
            for word, freq in counts.items():
                out.write(f"{word}\t{freq:.6e}\n")


if __name__ == "__main__":
    write_iris()
    write_lexicons()
    sys.exit(0)
