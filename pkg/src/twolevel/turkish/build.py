"""Regenerate the committed suffix grammar and its coverage matrix.

    python -m twolevel.turkish.build
"""

from pathlib import Path

from .morphotactics import build_coverage_text, build_lexicon_text


def main():
    data = Path(__file__).parent / "data"
    (data / "suffix_grammar.lex").write_text(build_lexicon_text(), encoding="utf-8")
    (data / "coverage_matrix.txt").write_text(build_coverage_text(), encoding="utf-8")
    print("wrote", data / "suffix_grammar.lex")
    print("wrote", data / "coverage_matrix.txt")


if __name__ == "__main__":
    main()
