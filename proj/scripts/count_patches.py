#!/usr/bin/env python3
"""Counts 4-connected crop components and traversable cells in a map file."""

import sys


def load(path):
    lines = [l.rstrip('\n') for l in open(path)]
    while lines and lines[0].startswith('#') and '=' in lines[0]:
        lines.pop(0)
    return [l for l in lines if l.strip()]


def count(rows, sym='Y'):
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for y, row in enumerate(rows):
        for x, c in enumerate(row):
            if c != sym:
                continue
            parent[(x, y)] = (x, y)
            for n in ((x - 1, y), (x, y - 1)):
                if n in parent:
                    ra, rb = find((x, y)), find(n)
                    if ra != rb:
                        parent[ra] = rb
    return len({find(k) for k in parent})


if __name__ == '__main__':
    rows = load(sys.argv[1])
    cells = sum(len(r) for r in rows)
    obstacles = sum(r.count('#') for r in rows)
    print(f'width={len(rows[0])} height={len(rows)} crop_patches={count(rows)} '
          f'traversable={cells - obstacles}')
