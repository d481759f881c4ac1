"""The shipped desk-scale corpus of small schemes used by the claim
verifier and the test suite."""

from __future__ import annotations

from pathlib import Path

from .core import AssociationScheme
from .generators import (
    CyclotomicSpec,
    SlopeGrouping,
    gen_complete,
    gen_cyclotomic,
    gen_hamming_binary,
    gen_net_scheme,
)

__all__ = ["standard_corpus", "write_standard_corpus"]

_NET_GROUPINGS = {
    2: [[[0, 1, 2]], [[0, 1], [2]], [[0], [1], [2]]],
    3: [[[0], [1], [2], [3]], [[0, 1], [2], [3]], [[0, 1], [2, 3]], [[0, 1, 2], [3]]],
    4: [[[0], [1], [2], [3], [4]],
        [[0, 1], [2], [3], [4]],
        [[0, 1], [2, 3], [4]],
        [[0, 1, 2], [3], [4]],
        [[0, 1, 2], [3, 4]],
        [[0, 1, 2, 3], [4]]],
    5: [[[0], [1], [2], [3], [4], [5]],
        [[0, 1], [2], [3], [4], [5]],
        [[2, 3], [0], [1], [4], [5]],
        [[0, 1], [2, 3], [4], [5]],
        [[0, 1, 2], [3], [4], [5]],
        [[0, 1], [2, 3], [4, 5]],
        [[0, 1, 2], [3, 4], [5]],
        [[0, 1, 2], [3, 4, 5]],
        [[0, 1, 2, 3], [4], [5]],
        [[0, 1, 2, 3], [4, 5]],
        [[0, 1, 2, 3, 4], [5]]],
}

_CYCLOTOMIC = [
    (5, 2), (7, 3), (8, 7), (9, 2), (9, 4), (11, 5),
    (13, 2), (13, 3), (13, 6), (16, 3), (16, 5),
    (25, 2), (25, 3), (25, 4),
]


def standard_corpus() -> list[tuple[str, AssociationScheme]]:
    """Deterministically ordered (name, scheme) pairs."""
    out: list[tuple[str, AssociationScheme]] = []
    out.append(("complete_v2", gen_complete(2)))
    out.append(("complete_v5", gen_complete(5)))
    for m in range(1, 7):
        out.append((f"hamming_m{m}", gen_hamming_binary(m)))
    for n, groupings in _NET_GROUPINGS.items():
        for groups in groupings:
            tag = "-".join("".join(str(s) for s in g) for g in groups)
            out.append((f"net_n{n}_{tag}",
                        gen_net_scheme(n, SlopeGrouping.from_groups(n, groups))))
    for q, d in _CYCLOTOMIC:
        out.append((f"cyclotomic_q{q}_d{d}", gen_cyclotomic(CyclotomicSpec(q=q, d=d))))
    return out


def write_standard_corpus(directory) -> list[Path]:
    """Write every corpus member as a scheme file; returns the paths."""
    from .cli import save_scheme

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, scheme in standard_corpus():
        path = directory / f"{name}.scheme"
        save_scheme(scheme, path, comment=name)
        paths.append(path)
    return paths
