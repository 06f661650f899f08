"""Hyperbolic volumes of genus-2 mapping tori, computed by SnapPy's twister.

Twister's closed genus-2 surface carries the chain a, b, c, d, e, matched
here with t1 .. t5. Twister reads a word left to right with its own twist
handedness; reversing a word and flipping handedness both conjugate the
monodromy by an orientation-reversing map or invert it, neither of which
changes the volume of the mapping torus.

A word is kept when some retriangulation has all tetrahedra positively
oriented (the mapping torus is hyperbolic, so the monodromy is
pseudo-Anosov). Output: the volume CSV on stdout, diagnostics on stderr.
"""
import sys

import snappy
import snappy.twister as twister

WORDS = [
    ('w01', 't1 t2^-1'),
    ('w02', 't1 t2^-1 t3'),
    ('w03', 't1 t2^-1 t3 t4^-1'),
    ('w04', 't1 t2^-1 t3 t4^-1 t5'),
    ('w05', 't1 t3 t2^-1 t4^-1 t5'),
    ('w06', 't1 t2 t3 t4 t5^-1'),
    ('w07', 't1^2 t2^-1 t3 t4^-1 t5'),
    ('w08', 't1 t2^-2 t3 t4^-1 t5'),
    ('w09', 't1 t2^-1 t3^2 t4^-1 t5'),
    ('w10', 't1 t2^-1 t3 t4^-1 t5 t4^-1'),
    ('w11', 't1 t3 t5 t2^-1 t4^-1'),
    ('w12', 't1 t2 t3 t4^-1 t5^-1'),
    ('w13', 't1 t2^-1 t3 t4 t5^-1'),
    ('w14', 't2 t1^-1 t3 t4^-1 t5'),
    ('w15', 't1 t2^-1 t5 t4^-1 t3'),
]

POWERS = [('w06', 2), ('w06', 3), ('w13', 2), ('w03', 2)]


def twister_word(word):
    out = []
    for tok in word.split():
        name, _, exp = tok.partition('^')
        e = int(exp) if exp else 1
        letter = 'abcde'[int(name[1:]) - 1]
        out += [letter if e > 0 else letter.upper()] * abs(e)
    return '*'.join(out)


def power(word, n):
    return ' '.join([word] * n)


def volume(word):
    M = twister.Surface('S_2').bundle(twister_word(word), warnings=False)
    for _ in range(50):
        if M.solution_type() == 'all tetrahedra positively oriented':
            return M.high_precision().volume()
        M.randomize()
    return None


def main():
    print('snappy %s' % snappy.__version__, file=sys.stderr)
    rows = []
    kept = {}
    for name, word in WORDS:
        v = volume(word)
        print('%s %-32s %s' % (name, word, v), file=sys.stderr)
        if v is not None:
            kept[name] = word
            rows.append((name, word, v, '', ''))
    for base, n in POWERS:
        if base not in kept:
            continue
        name = '%s_pow%d' % (base, n)
        word = power(kept[base], n)
        v = volume(word)
        print('%s %-32s %s' % (name, word, v), file=sys.stderr)
        if v is not None:
            rows.append((name, word, v, base, str(n)))
    print('name,genus,word,volume,power_of,power')
    for name, word, v, base, n in rows:
        print('%s,2,"%s",%s,%s,%s' % (name, word, repr(float(v)), base, n))


if __name__ == '__main__':
    main()
