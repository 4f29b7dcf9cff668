"""Tests for certificate serialization and the digest-addressed store."""

import json

import pytest

from fracparts.certificates import Certificate, CertificateStore


def make_cert(**kw):
    base = dict(statement="log-concave", alpha="2/1", n_from=6, n_to=100,
                method="bounded", outcome="verified", schedule="d4",
                precision_bits=256)
    base.update(kw)
    return Certificate(**base)


class TestCertificate:
    def test_roundtrip(self):
        cert = make_cert(checkpoint_digests=("aa", "bb"),
                         premises=("cc",), notes="x")
        back = Certificate.from_json(cert.canonical_json())
        assert back == cert
        assert back.digest() == cert.digest()

    def test_canonical_json_is_stable(self):
        cert = make_cert()
        assert cert.canonical_json() == cert.canonical_json()
        d = json.loads(cert.canonical_json())
        assert list(d) == sorted(d)

    def test_digest_changes_with_content(self):
        a = make_cert()
        b = make_cert(n_to=101)
        assert a.digest() != b.digest()

    def test_witness_roundtrip_pair(self):
        cert = make_cert(outcome="counterexample", witness=(6, 4),
                         statement="cft-pairs")
        back = Certificate.from_json(cert.canonical_json())
        assert back.witness == (6, 4)

    def test_verified_rejects_witness(self):
        with pytest.raises(ValueError):
            make_cert(outcome="verified", witness=3)

    def test_validates_enums(self):
        with pytest.raises(ValueError):
            make_cert(statement="nonsense")
        with pytest.raises(ValueError):
            make_cert(method="vibes")
        with pytest.raises(ValueError):
            make_cert(outcome="maybe")


class TestStore:
    def test_save_load_lookup(self, tmp_path):
        store = CertificateStore(str(tmp_path))
        cert = make_cert()
        digest = store.save(cert)
        assert store.load(digest) == cert
        assert store.lookup("log-concave", 2) == cert
        assert store.lookup("cft-pairs", 2) is None

    def test_tampered_file_rejected(self, tmp_path):
        store = CertificateStore(str(tmp_path))
        digest = store.save(make_cert())
        path = tmp_path / (digest + ".json")
        text = path.read_text().replace('"n_to":100', '"n_to":101')
        path.write_text(text)
        with pytest.raises(ValueError):
            store.load(digest)

    def test_index_updates(self, tmp_path):
        store = CertificateStore(str(tmp_path))
        store.save(make_cert(n_to=50))
        d2 = store.save(make_cert(n_to=80))
        got = store.lookup("log-concave", 2)
        assert got.n_to == 80 and got.digest() == d2
