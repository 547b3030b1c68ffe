from fractions import Fraction as F

from pabisim.figures import plot_hasse, plot_reachable_set
from pabisim.lattice import QuotientSet, verify_lattice
from pabisim.models import bounded_family, weak_left


def test_reachable_set_png(tmp_path):
    p = bounded_family([0, F(1, 3), F(1, 2), 1])
    path = tmp_path / "fam.png"
    ext = plot_reachable_set(p, 1, "tau", path)
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert {d[2] for d in ext} == {0, 1}


def test_reachable_set_three_blocks(tmp_path):
    path = tmp_path / "tri.png"
    ext = plot_reachable_set(weak_left(), 1, "tau", path)
    assert len(ext) == 2 and path.stat().st_size > 0


def test_hasse_png(tmp_path):
    members = [bounded_family(c) for c in ([0, 1], [0, F(1, 3), 1], [0, F(1, 2), 1], [0, F(1, 3), F(1, 2), 1])]
    rep = verify_lattice(QuotientSet(members, "strong", ["bot", "t", "h", "top"]))
    path = tmp_path / "hasse.png"
    covers = plot_hasse(rep, path)
    assert sorted(covers) == [("bot", "h"), ("bot", "t"), ("h", "top"), ("t", "top")]
    assert path.stat().st_size > 0
