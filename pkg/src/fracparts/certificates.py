"""Machine-checkable certificates and a digest-addressed store.

A certificate records one verified (or refuted, or undecided) inequality
statement over a parameter range, together with everything needed to
reproduce the run: method, schedule, precision, exceptions, and the
digest chain of any checkpoints written along the way.  Serialization is
canonical JSON (sorted keys, no whitespace variation) so the digest and
byte-for-byte reproducibility are well defined.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass
from fractions import Fraction

FORMAT_VERSION = 1

STATEMENTS = ("log-concave", "cft-pairs")
METHODS = ("exact", "bounded", "closure")
OUTCOMES = ("verified", "counterexample", "indeterminate")


def rat_str(x) -> str:
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator)


@dataclass(frozen=True)
class Certificate:
    statement: str
    alpha: str                    # "num/den"
    n_from: int
    n_to: int
    method: str
    outcome: str                  # verified | counterexample | indeterminate
    witness: object = None        # n or [n, ell] for non-verified outcomes
    exceptions: tuple = ()        # known exempted witnesses, as tuples/lists
    schedule: str | None = None
    schedule_params: object = None
    precision_bits: int | None = None
    premises: tuple = ()          # digests or conditional references
    checkpoint_digests: tuple = ()
    notes: str = ""
    version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.statement not in STATEMENTS:
            raise ValueError("unknown statement: %r" % self.statement)
        if self.method not in METHODS:
            raise ValueError("unknown method: %r" % self.method)
        if self.outcome not in OUTCOMES:
            raise ValueError("unknown outcome: %r" % self.outcome)
        if self.outcome == "verified" and self.witness is not None:
            raise ValueError("verified certificates carry no counterexample")

    def canonical_json(self) -> str:
        d = asdict(self)
        return json.dumps(d, sort_keys=True, separators=(",", ":"),
                          default=_jsonable)

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    @staticmethod
    def from_json(text: str) -> "Certificate":
        d = json.loads(text)
        for key in ("exceptions", "premises", "checkpoint_digests"):
            d[key] = tuple(tuple(x) if isinstance(x, list) else x
                           for x in d.get(key, ()))
        if isinstance(d.get("witness"), list):
            d["witness"] = tuple(d["witness"])
        return Certificate(**d)


def _jsonable(x):
    if isinstance(x, Fraction):
        return rat_str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError("not serializable: %r" % (x,))


class CertificateStore:
    """Directory of certificate files named by digest, plus an index."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self.index_path = os.path.join(root, "index.json")

    def _load_index(self) -> dict:
        if os.path.exists(self.index_path):
            with open(self.index_path) as fh:
                return json.load(fh)
        return {}

    def save(self, cert: Certificate) -> str:
        digest = cert.digest()
        path = os.path.join(self.root, digest + ".json")
        with open(path, "w") as fh:
            fh.write(cert.canonical_json())
        index = self._load_index()
        index[self.key_of(cert)] = digest
        with open(self.index_path, "w") as fh:
            json.dump(index, fh, sort_keys=True, indent=1)
        return digest

    def load(self, digest: str) -> Certificate:
        path = os.path.join(self.root, digest + ".json")
        with open(path) as fh:
            text = fh.read()
        cert = Certificate.from_json(text)
        if cert.digest() != digest:
            raise ValueError("certificate digest mismatch for %s" % digest)
        return cert

    def lookup(self, statement: str, alpha) -> Certificate | None:
        index = self._load_index()
        digest = index.get("%s:%s" % (statement, rat_str(alpha)))
        return self.load(digest) if digest else None

    @staticmethod
    def key_of(cert: Certificate) -> str:
        return "%s:%s" % (cert.statement, cert.alpha)
