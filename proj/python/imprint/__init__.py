"""Covering and separation for regular languages.

Languages are regex strings over the alphabet, "%universal", or automata given
as dicts in the JSON automaton format. Every call returns a plain dict.
"""

import json

from . import _imprint
from ._imprint import CapExceeded, InputError

__all__ = ["CapExceeded", "InputError", "cover", "imprint", "member", "oracle", "separate"]


def _language(lang):
    return json.dumps(lang) if isinstance(lang, dict) else lang


def _options(options):
    return json.dumps(options) if options else ""


def cover(alphabet, cls, against, target="%universal", **options):
    """Decide whether target is coverable against the multiset, optionally emitting a cover."""
    instance = {
        "alphabet": alphabet,
        "class": cls,
        "target": target,
        "against": list(against),
        "options": options,
    }
    return json.loads(_imprint.cover(json.dumps(instance)))


def separate(cls, alphabet, l1, l2, **options):
    """Decide whether l1 is separable from l2; the verdict carries a separator when one is built."""
    return json.loads(_imprint.separate(cls, alphabet, _language(l1), _language(l2), _options(options)))


def member(cls, alphabet, language, **options):
    """Decide whether the language belongs to the class."""
    return json.loads(_imprint.member(cls, alphabet, _language(language), _options(options)))


def imprint(cls, alphabet, languages, chain=False, **options):
    """Optimal imprint of a multiset, as index sets over the languages."""
    langs = [_language(lang) for lang in languages]
    return json.loads(_imprint.imprint(cls, alphabet, langs, _options(options), chain))


def oracle(which, alphabet, *args, **options):
    """Independent validators: "sigma1-sep", "pt-k" or "at"."""
    texts = [str(a) if isinstance(a, int) else _language(a) for a in args]
    return json.loads(_imprint.oracle(which, alphabet, texts, _options(options)))
