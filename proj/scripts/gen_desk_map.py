#!/usr/bin/env python3
"""Generates the bundled desk landscape (data/field_desk.map).

72 x 64 cells of 125 m. Rectangular crop plots sit on a jittered lattice;
obstacle hedgerows split the field into blocks connected by narrow gaps.
Plots are added or removed deterministically until the map holds exactly
the requested number of 4-connected crop components.
"""

import argparse
import random

W, H = 72, 64


def components(grid, sym):
    seen = [[False] * W for _ in range(H)]
    count = 0
    for y in range(H):
        for x in range(W):
            if grid[y][x] != sym or seen[y][x]:
                continue
            count += 1
            stack = [(x, y)]
            seen[y][x] = True
            while stack:
                cx, cy = stack.pop()
                for nx, ny in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)):
                    if 0 <= nx < W and 0 <= ny < H and not seen[ny][nx] and grid[ny][nx] == sym:
                        seen[ny][nx] = True
                        stack.append((nx, ny))
    return count


def build(args):
    rng = random.Random(args.seed)
    grid = [['.'] * W for _ in range(H)]
    hx, hy = args.hive

    # Hedgerows: full-length lines with gaps every `gap_every` cells.
    for x in args.vwalls:
        for y in range(H):
            grid[y][x] = '#'
        for y in range(rng.randrange(args.gap_every), H, args.gap_every):
            for k in range(args.gap_width):
                if y + k < H:
                    grid[y + k][x] = '.'
    for y in args.hwalls:
        for x in range(W):
            grid[y][x] = '#'
        for x in range(rng.randrange(args.gap_every), W, args.gap_every):
            for k in range(args.gap_width):
                if x + k < W:
                    grid[y][x + k] = '.'

    def free(x0, y0, w, h):
        # Plot plus a one-cell empty margin must avoid walls, hive and plots.
        for y in range(y0 - 1, y0 + h + 1):
            for x in range(x0 - 1, x0 + w + 1):
                if not (0 <= x < W and 0 <= y < H):
                    continue
                if grid[y][x] != '.':
                    return False
                if abs(x - hx) <= 1 and abs(y - hy) <= 1:
                    return False
        return True

    plots = []
    sx, sy = args.slot
    for gy in range(0, H, sy):
        for gx in range(0, W, sx):
            w = rng.randint(2, sx - 1)
            h = rng.randint(1, sy - 1)
            x0 = gx + rng.randint(0, max(0, sx - w - 1))
            y0 = gy + rng.randint(0, max(0, sy - h - 1))
            if x0 + w > W or y0 + h > H:
                continue
            if free(x0, y0, w, h):
                for y in range(y0, y0 + h):
                    for x in range(x0, x0 + w):
                        grid[y][x] = 'Y'
                plots.append((x0, y0, w, h))

    rng.shuffle(plots)
    while components(grid, 'Y') > args.patches:
        x0, y0, w, h = plots.pop()
        for y in range(y0, y0 + h):
            for x in range(x0, x0 + w):
                grid[y][x] = '.'
    tries = 0
    while components(grid, 'Y') < args.patches:
        tries += 1
        if tries > 100000:
            raise SystemExit('cannot reach the requested patch count')
        w = rng.randint(1, 3)
        h = rng.randint(1, 2)
        x0 = rng.randrange(0, W - w)
        y0 = rng.randrange(0, H - h)
        if free(x0, y0, w, h):
            for y in range(y0, y0 + h):
                for x in range(x0, x0 + w):
                    grid[y][x] = 'Y'

    grid[hy][hx] = 'H'
    return grid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument('--seed', type=int, default=2009)
    ap.add_argument('--patches', type=int, default=245)
    ap.add_argument('--hive', type=int, nargs=2, default=[36, 32])
    ap.add_argument('--vwalls', type=int, nargs='*', default=[22, 50])
    ap.add_argument('--hwalls', type=int, nargs='*', default=[17, 46])
    ap.add_argument('--gap-every', type=int, default=8)
    ap.add_argument('--gap-width', type=int, default=2)
    ap.add_argument('--slot', type=int, nargs=2, default=[5, 4])
    ap.add_argument('--cell-size', default='125')
    ap.add_argument('-o', '--output', default='-')
    args = ap.parse_args()
    grid = build(args)
    text = f'# cell_size_m={args.cell_size}\n' + ''.join(''.join(r) + '\n' for r in grid)
    if args.output == '-':
        print(text, end='')
    else:
        with open(args.output, 'w') as f:
            f.write(text)


if __name__ == '__main__':
    main()
