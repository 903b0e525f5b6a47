"""Top-level acceptance suite: one test per shipped guarantee.

Each test is self-contained (own parsing, own timing) so a single line of
`pytest -v` output gives the verdict for one numbered criterion.
"""

import itertools
import random
import time
from math import gcd, isqrt

from bandforge import cli
from bandforge.dilog import volume
from bandforge.fixtures import fixture_text, load_fixture
from bandforge.gluing import build_equations, newton_solve, residual
from bandforge.krawczyk import krawczyk_test
from bandforge.surgery import (LensSpace, Slope, bhw_example_report,
                               double_branched_cover, lens_equivalent,
                               lens_mirror, matignon_family, normalize_lens,
                               slope_distance)
from bandforge.tangle import (TwoBridge, eval_conway, four_move_signature_obstruction,
                              is_unlinking_number_one, signature_two_bridge,
                              two_bridge_equivalent, verify_chirally_cosmetic)
from bandforge.tri import parse_triangulation, serialize_triangulation


def _hint_volume(label):
    tri = load_fixture(label)
    return tri, volume([t.shape_hint for t in tri.tets])


def test_criterion_01_volume_reproduction_a():
    t0 = time.perf_counter()
    tri, vol = _hint_volume("A")
    elapsed = time.perf_counter() - t0
    assert abs(vol - 10.01776364) < 5e-7
    assert tri.solution_type == "geometric_solution"
    assert elapsed < 1.0


def test_criterion_02_volume_reproduction_b():
    t0 = time.perf_counter()
    tri, vol = _hint_volume("B")
    elapsed = time.perf_counter() - t0
    assert abs(vol - 17.66121174) < 5e-7
    assert tri.solution_type == "geometric_solution"
    assert elapsed < 1.0


def test_criterion_03_convention_oracle():
    t0 = time.perf_counter()
    expected = {"A": (12, 0, 1), "B": (26, 1, 6)}
    for label, (n_edge, n_complete, n_filled) in expected.items():
        tri = load_fixture(label)
        sys_ = build_equations(tri)
        kinds = [r.kind for r in sys_.rows]
        assert kinds.count("edge") == n_edge
        assert kinds.count("cusp_complete") == n_complete
        assert kinds.count("cusp_filled") == n_filled
        res = residual(sys_, [t.shape_hint for t in tri.tets])
        assert max(abs(r) for r in res) < 1e-8
    assert time.perf_counter() - t0 < 1.0


def test_criterion_04_newton_recovery():
    rng = random.Random(2026)
    for label in ("A", "B"):
        tri = load_fixture(label)
        sys_ = build_equations(tri)
        hints = [t.shape_hint for t in tri.tets]
        noisy = [z + 1e-3 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                 for z in hints]
        result = newton_solve(sys_, noisy, max_iter=10)
        assert result.iterations <= 10
        err = max(abs(a - b) for a, b in zip(result.shapes, hints))
        assert err < 1e-9


def test_criterion_05_certified_hyperbolicity():
    t0 = time.perf_counter()
    for label in ("A", "B"):
        tri = load_fixture(label)
        sys_ = build_equations(tri)
        result = newton_solve(sys_, [t.shape_hint for t in tri.tets])
        cert = krawczyk_test(sys_, result.shapes, 1e-8)
        assert cert.contracted
        assert cert.all_imag_positive
    assert time.perf_counter() - t0 < 30.0


def test_criterion_06_signature_anchors():
    assert signature_two_bridge(TwoBridge(5, 1)) == -4
    assert signature_two_bridge(TwoBridge(5, 4)) == 4
    assert four_move_signature_obstruction(TwoBridge(5, 1), TwoBridge(5, 4))


def test_criterion_07_palindrome_property_suite():
    t0 = time.perf_counter()
    flank_values = [a for a in range(-4, 5) if a != 0]
    checked = 0
    for length in range(0, 5):
        for flank in itertools.product(flank_values, repeat=length):
            for middle in (2, -2):
                cf = flank + (middle,) + tuple(-a for a in reversed(flank))
                fr = eval_conway(cf)
                p = abs(fr.p)
                n = isqrt(p // 2)
                assert p % 2 == 0 and 2 * n * n == p, cf
                assert verify_chirally_cosmetic(cf), cf
                checked += 1
    assert checked == 9362
    assert time.perf_counter() - t0 < 60.0


def test_criterion_08_kohn_suite():
    # every family member S(2n^2, 2nm +- 1), n <= 6, must yield a witness
    members = 0
    for n in range(1, 7):
        p = 2 * n * n
        for m in range(1, n + 1):
            if gcd(n, m) != 1:
                continue
            for sign in (1, -1):
                q = 2 * n * m + sign
                if not 0 < q < p:
                    continue
                members += 1
                link = TwoBridge(p, q)
                witness = is_unlinking_number_one(link)
                assert witness is not None, (n, m, sign)
                wn, wm = witness
                candidates = [TwoBridge(2 * wn * wn, wq)
                              for wq in (2 * wn * wm + 1, 2 * wn * wm - 1)
                              if 0 < wq < 2 * wn * wn]
                assert any(two_bridge_equivalent(link, c) for c in candidates)
    assert members == 23

    families = 0
    for m in range(1, 9):
        for n in range(1, m + 1):
            if gcd(m, n) != 1 or 2 * n > m:
                continue
            lens, link = matignon_family(m, n)
            assert lens == LensSpace(2 * m * m, (2 * m * n - 1) % (2 * m * m))
            assert double_branched_cover(link) == lens
            assert is_unlinking_number_one(link) is not None
            families += 1
    assert families == 11


def test_criterion_09_bhw_bookkeeping():
    assert lens_equivalent(lens_mirror(normalize_lens(49, -19)),
                           normalize_lens(49, -18), oriented=True)
    assert slope_distance(Slope(19, 1), Slope(18, 1)) == 1
    assert slope_distance(Slope(1, 0), Slope(3, 1)) == 1
    triples = bhw_example_report()
    assert len(triples) == 4
    assert all(passed for _, passed, _ in triples)


def test_criterion_10_parser_round_trip(tmp_path, capsys, monkeypatch):
    # token-identical serialization (byte-identical, in fact)
    for label in ("A", "B"):
        text = fixture_text(label)
        out = serialize_triangulation(parse_triangulation(text))
        assert out.split() == text.split()
        assert out == text

    # forced corruptions: designated diagnostic and exit code 2 apiece
    base = fixture_text("A")
    lines = base.splitlines()
    corruptions = [
        ("", "missing header"),
        ("\n".join(lines[:40]), "unexpected end of input"),
        (base.replace("oriented_manifold", "bent_manifold"), "orientability"),
        (base.replace("   1.000000000000   0.000000000000",
                      "   1.500000000000   0.000000000000", 1), "not integral"),
        (base.replace("   9    7    1    2 ",
                      "  99    7    1    2 ", 1), "out of range"),
        (base + "0\n", "trailing tokens"),
    ]
    for i, (text, diagnostic) in enumerate(corruptions):
        path = tmp_path / f"corrupt_{i}.tri"
        path.write_text(text)
        code = cli.main(["tri", "parse", str(path)])
        captured = capsys.readouterr()
        assert code == 2, diagnostic
        assert diagnostic in captured.err, (diagnostic, captured.err)
