"""First-syllable marking for new lexical roots.

Several rules condition on the first syllable boundary, so roots are stored
with a "^" after it.  Standard syllabification: every syllable has exactly
one vowel, a single intervocalic consonant opens the next syllable, and of
an intervocalic cluster only the last consonant does.  Monosyllables get a
trailing "^".
"""

VOWELS = set("aeıiuüoöáèóú")


class SyllabifyError(ValueError):
    pass


def syllabify_first(word):
    positions = [i for i, ch in enumerate(word) if ch in VOWELS]
    if not positions:
        raise SyllabifyError("no vowel in %r" % word)
    if len(positions) == 1:
        return word + "^"
    v1, v2 = positions[0], positions[1]
    cluster = v2 - v1 - 1
    cut = v1 + 1 if cluster <= 1 else v2 - 1
    return word[:cut] + "^" + word[cut:]
