import numpy as np
import pytest

from lhckit import (
    Alphabet,
    EdgeMap,
    FunctionCode,
    FunctionTable,
    code_to_lhc,
    gen_codebook,
    identity_channel,
    jsonio,
)
from lhckit.bipartite import random_branch_swap_instance
from lhckit.errors import ShapeError

from conftest import rand_channel, rand_partition


class TestRoundTrips:
    def test_hypergraph(self, tmp_path):
        rng = np.random.default_rng(0)
        h = rand_partition(rng, Alphabet.of_size(5, "v"), 3)
        path = tmp_path / "h.json"
        jsonio.write_json(path, jsonio.hypergraph_to_dict(h))
        back = jsonio.hypergraph_from_dict(jsonio.read_json(path))
        assert back.vertices.labels == h.vertices.labels
        assert back.edges == h.edges

    def test_function_table(self, tmp_path):
        f = FunctionTable(Alphabet.of_size(3, "a"), Alphabet.of_size(2, "b"),
                          (0, 1, 0))
        path = tmp_path / "f.json"
        jsonio.write_json(path, jsonio.function_table_to_dict(f))
        back = jsonio.function_table_from_dict(jsonio.read_json(path))
        assert back.mapping == f.mapping and back.domain.labels == f.domain.labels

    def test_channel_lossless(self, tmp_path):
        rng = np.random.default_rng(1)
        ch = rand_channel(rng, Alphabet.of_size(3, "x"), Alphabet.of_size(4, "y"))
        path = tmp_path / "c.json"
        jsonio.write_json(path, jsonio.channel_to_dict(ch))
        back = jsonio.channel_from_dict(jsonio.read_json(path))
        assert np.array_equal(back.rows, ch.rows)  # bitwise, via repr round trip

    def test_edge_map(self):
        m = EdgeMap(3, 2, (1, 0, 1))
        assert jsonio.edge_map_from_dict(jsonio.edge_map_to_dict(m)) == m

    def test_certificate(self, tmp_path):
        f = FunctionTable(Alphabet.of_size(2, "a"), Alphabet.of_size(2, "b"), (0, 1))
        ident = identity_channel(Alphabet.of_size(2, "a"))
        code = FunctionCode(
            ident,
            identity_channel_between(Alphabet.of_size(2, "a"), Alphabet.of_size(2, "b")),
            f,
            ident,
        )
        cert = code_to_lhc(code)
        d = jsonio.certificate_to_dict(cert)
        back = jsonio.certificate_from_dict(d)
        assert back.passed == cert.passed
        assert np.array_equal(back.lam, cert.lam)
        assert back.edge_map == cert.edge_map

    def test_code_bundle(self, tmp_path):
        rng = np.random.default_rng(2)
        dom = Alphabet.of_size(2, "a")
        cod = Alphabet.of_size(2, "b")
        f = FunctionTable(dom, cod, (0, 1))
        code = FunctionCode(
            rand_channel(rng, dom, Alphabet.of_size(3, "x")),
            rand_channel(rng, Alphabet.of_size(3, "y"), cod),
            f,
            rand_channel(rng, Alphabet.of_size(3, "x"), Alphabet.of_size(3, "y")),
        )
        bundle = tmp_path / "code.json"
        jsonio.write_code_bundle(bundle, code)
        back = jsonio.read_code_bundle(bundle)
        assert np.array_equal(back.encoder.rows, code.encoder.rows)
        assert np.array_equal(back.channel.rows, code.channel.rows)
        assert back.f.mapping == code.f.mapping

    def test_codebook_file(self, tmp_path):
        book = gen_codebook(7, 3 / 7, 16)
        path = tmp_path / "book.txt"
        jsonio.write_codebook(path, book)
        text = path.read_text()
        assert text.startswith("# n=7 d=3\n")
        back = jsonio.read_codebook(path)
        assert back.words == book.words and back.dmin == book.dmin

    def test_codebook_header_required(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0101010\n")
        with pytest.raises(ShapeError):
            jsonio.read_codebook(path)

    def test_branch_swap_instance(self):
        from lhckit import check_branch_swap

        rng = np.random.default_rng(3)
        phi, h, g, i, f, lam = random_branch_swap_instance(rng)
        report = check_branch_swap(phi, h, g, i, f, lam)
        d = jsonio.instance_to_dict(report.instance)
        back = jsonio.instance_from_dict(d)
        assert back.hyper_h.edges == h.edges
        assert np.array_equal(back.phi.rows, phi.rows)
        again = check_branch_swap(back.phi, back.hyper_h, back.hyper_g,
                                  back.hyper_i, back.hyper_f, back.lam)
        assert again.hypothesis_holds == report.hypothesis_holds
        assert again.conclusion_holds == report.conclusion_holds


def identity_channel_between(a, b):
    from lhckit import deterministic_channel

    return deterministic_channel(FunctionTable(a, b, tuple(range(a.size))))
