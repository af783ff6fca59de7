"""Seed model for representing hierarchical, reproducible random streams."""
import hashlib
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


def label_hash(label: str) -> int:
    """First 8 bytes (big-endian) of the SHA-256 digest of the label."""
    return int.from_bytes(hashlib.sha256(label.encode("utf-8")).digest()[:8], "big")


class Seed(BaseModel):
    """
    A base seed plus an ordered path of substream labels.

    The stream is numpy's PCG64 seeded through a SeedSequence whose spawn key
    is the hashed label path, so identical (value, labels) always produce the
    same numbers regardless of the order in which substreams are used.

    Attributes:
        value: 64-bit unsigned base seed
        labels: Substream path, e.g. ("data", "n:300", "rep:4")
    """
    model_config = ConfigDict(frozen=True)

    value: int = Field(ge=0, lt=2**64, description="Base seed")
    labels: Tuple[str, ...] = Field(default=(), description="Substream labels")

    def child(self, *labels) -> "Seed":
        return Seed(value=self.value, labels=self.labels + tuple(str(label) for label in labels))

    def sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(entropy=self.value,
                                      spawn_key=tuple(label_hash(label) for label in self.labels))

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.sequence()))

    def fingerprint(self) -> int:
        """A 63-bit integer identifying the stream, written into result rows."""
        state = self.sequence().generate_state(1, dtype=np.uint64)[0]
        return int(state) & (2**63 - 1)

    def __str__(self):
        return f"{self.value}/" + "/".join(self.labels)
