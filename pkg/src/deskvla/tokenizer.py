"""Word-level tokenizer with byte fallback, standing in for a pretrained tokenizer."""

from __future__ import annotations

import numpy as np

PAD, BOS, EOS = 0, 1, 2
N_SPECIAL = 3
BYTE_BASE = N_SPECIAL  # byte b maps to id BYTE_BASE + b
WORD_BASE = BYTE_BASE + 256


class Tokenizer:
    """Whitespace-split word tokenizer; out-of-vocabulary words fall back to UTF-8 bytes.

    Deterministic and reversible for in-vocabulary text: ``decode`` joins words
    with single spaces, so ``encode(decode(ids)) == ids`` for word ids.
    """

    def __init__(self, words: list[str], vocab_size: int = 512):
        if len(set(words)) != len(words):
            raise ValueError("duplicate words in vocabulary")
        if any((" " in w) or not w for w in words):
            raise ValueError("vocabulary entries must be non-empty single words")
        self.words = list(words)
        self.word_to_id = {w: WORD_BASE + i for i, w in enumerate(self.words)}
        needed = WORD_BASE + len(self.words)
        if vocab_size < needed:
            raise ValueError(f"vocab_size {vocab_size} < required {needed}")
        self.vocab_size = vocab_size

    def encode(self, text: str) -> list[int]:
        ids: list[int] = []
        for word in text.split():
            wid = self.word_to_id.get(word)
            if wid is not None:
                ids.append(wid)
            else:
                ids.extend(BYTE_BASE + b for b in word.encode("utf-8"))
        return ids

    def decode(self, ids) -> str:
        parts: list[str] = []
        pending: list[int] = []

        def flush():
            if pending:
                parts.append(bytes(pending).decode("utf-8", errors="replace"))
                pending.clear()

        for i in map(int, ids):
            if BYTE_BASE <= i < WORD_BASE:
                pending.append(i - BYTE_BASE)
            elif i >= WORD_BASE:
                flush()
                parts.append(self.words[i - WORD_BASE])
            else:
                flush()  # specials are dropped from text
        flush()
        return " ".join(parts)

    def encode_padded(self, text: str, length: int) -> np.ndarray:
        """[BOS] + words + [EOS], padded or truncated to a fixed length."""
        ids = [BOS] + self.encode(text)[: length - 2] + [EOS]
        ids = ids + [PAD] * (length - len(ids))
        return np.asarray(ids[:length], dtype=np.int64)


def default_tokenizer(vocab_size: int = 512) -> Tokenizer:
    """Tokenizer over the toy world's full vocabulary."""
    from .world.taxonomy import VOCAB_WORDS

    return Tokenizer(VOCAB_WORDS, vocab_size=vocab_size)
