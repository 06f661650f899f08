"""Freeze intersection numbers on the six-times punctured sphere computed by curver.

Row: braid word u, arc index j, braid word v, arc index k, i(u(a_j), v(a_k)).
Arc a_j joins punctures j and j+1 (a_5 joins p5 to the puncture at infinity);
curver's half twist s_{j-1} is the generator sigma_j. Words compose left to right
as functions, so the rightmost letter acts first.
"""
import random
import sys

import curver

S = curver.load(0, 6)
ARC = {j + 1: S.arcs['s_%d' % j].boundary() for j in range(5)}


def mapping_class(word):
    h = S('')
    for (j, e) in word:
        h = h * (S('s_%d' % (j - 1)) ** e)
    return h


def fmt(word):
    return ' '.join(str(j * e) for (j, e) in word)


def main(n, seed):
    rng = random.Random(seed)
    print('u,j,v,k,intersection')
    for _ in range(n):
        u = [(rng.randint(1, 5), rng.choice([1, -1])) for _ in range(rng.randint(0, 6))]
        v = [(rng.randint(1, 5), rng.choice([1, -1])) for _ in range(rng.randint(0, 6))]
        j, k = rng.randint(1, 5), rng.randint(1, 5)
        i = mapping_class(u)(ARC[j]).intersection(mapping_class(v)(ARC[k]))
        print('%s,%d,%s,%d,%d' % (fmt(u), j, fmt(v), k, i))


if __name__ == '__main__':
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 300, int(sys.argv[2]) if len(sys.argv) > 2 else 20240611)
