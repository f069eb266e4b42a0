from csl import FiniteSet, Z


def ints(values):
    return FiniteSet.of(Z, values)


def pieces(s):
    return [(p.base, p.generators) for p in s.pieces]
