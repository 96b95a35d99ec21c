#!/usr/bin/env python3
"""Second implementation of the scout walk, used to freeze scouting goldens.

Prints, for each case, the per-cell coverage and the detected patch ids.
"""

import math

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z):
    z = (z + GOLDEN) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def derive_seed(parent, index):
    return mix64(parent ^ mix64((index + 0x632BE59BD9B4E019) & MASK))


class Rng:
    def __init__(self, key):
        self.key = key
        self.counter = 0
        self.cached = None

    def u64(self):
        out = mix64((self.key + self.counter * GOLDEN) & MASK)
        self.counter += 1
        return out

    def uniform(self):
        return (self.u64() >> 11) * 2.0 ** -53

    def normal(self):
        if self.cached is not None:
            v, self.cached = self.cached, None
            return v
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        a = 2.0 * math.pi * u2
        self.cached = r * math.sin(a)
        return r * math.cos(a)


def patches_of(rows, kappa):
    h, w = len(rows), len(rows[0])
    out = []
    for sym, artificial in (('Y', False), ('A', True)):
        seen = set()
        for y in range(h):
            for x in range(w):
                if rows[y][x] != sym or (x, y) in seen:
                    continue
                comp, stack = [], [(x, y)]
                seen.add((x, y))
                while stack:
                    cx, cy = stack.pop()
                    comp.append(cy * w + cx)
                    for nx, ny in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)):
                        if 0 <= nx < w and 0 <= ny < h and (nx, ny) not in seen and rows[ny][nx] == sym:
                            seen.add((nx, ny))
                            stack.append((nx, ny))
                comp.sort()
                prob = 0.95 if artificial else -math.expm1(-kappa * len(comp))
                out.append({'members': comp, 'prob': prob, 'artificial': artificial})
    return out


def simulate(rows, cell_size, kappa, scouts, sph, hours, radius, seed, max_range_m=6000.0,
             turn_sigma=0.5, step_length=1.0, dwell=10, retries=8, noise=0.15, attraction=True):
    h, w = len(rows), len(rows[0])
    patches = patches_of(rows, kappa)
    sensing = [[] for _ in range(w * h)]
    for p, patch in enumerate(patches):
        for m in patch['members']:
            mx, my = m % w, m // w
            for dy in range(-radius, radius + 1):
                for dx in range(-radius, radius + 1):
                    if dx * dx + dy * dy <= radius * radius and 0 <= mx + dx < w and 0 <= my + dy < h:
                        lst = sensing[(my + dy) * w + mx + dx]
                        if p not in lst:
                            lst.append(p)
    for lst in sensing:
        lst.sort()

    hive = next(y * w + x for y in range(h) for x in range(w) if rows[y][x] == 'H')
    hx, hy = hive % w + 0.5, hive // w + 0.5
    range_cells = max_range_m / cell_size
    coverage = [0] * (w * h)
    detected = set()
    steps = int(math.floor(hours * sph + 1e-9)) if hours > 0 else 0
    if steps == 0:
        return coverage, []

    def wrap(a):
        return math.remainder(a, 2.0 * math.pi)

    for i in range(scouts):
        rng = Rng(derive_seed(seed, i))
        s = {'x': hx, 'y': hy, 'cell': hive, 'heading': -math.pi + (math.pi - -math.pi) * rng.uniform(),
             'target': None, 'waypoint': False, 'approach': 0, 'dwell': 0,
             'tid': None, 'relayed': set()}

        def aim(patch, pid):
            best = math.inf
            for m in patch['members']:
                cx, cy = m % w + 0.5, m // w + 0.5
                d = math.hypot(cx - s['x'], cy - s['y'])
                if d < best:
                    best, s['target'] = d, (cx, cy)
            s['waypoint'] = patch['artificial']
            s['tid'] = pid
            s['approach'] = int(math.ceil(4.0 * (best + 1.0) / step_length)) + 10

        def encounter(before, now):
            for p in now:
                if p in before:
                    continue
                if rng.uniform() >= patches[p]['prob']:
                    continue
                detected.add(p)
                if attraction and s['target'] is None and s['dwell'] == 0 and p not in s['relayed']:
                    aim(patches[p], p)

        coverage[hive] += 1
        encounter([], sensing[hive])
        for _ in range(steps):
            if s['dwell'] > 0:
                s['dwell'] -= 1
                continue
            # heading
            done = False
            if math.hypot(s['x'] - hx, s['y'] - hy) > range_cells:
                s['target'] = None
                s['heading'] = math.atan2(hy - s['y'], hx - s['x']) + turn_sigma * rng.normal()
                done = True
            elif s['target'] is not None:
                tx, ty = s['target']
                dx, dy = tx - s['x'], ty - s['y']
                if math.hypot(dx, dy) <= 0.5 * step_length or s['approach'] <= 0:
                    arrived = s['approach'] > 0
                    s['target'] = None
                    if arrived and s['waypoint']:
                        s['heading'] = math.atan2(ty - hy, tx - hx)
                        s['relayed'].add(s['tid'])
                        done = True
                    elif arrived:
                        s['dwell'] = dwell
                        continue
                else:
                    s['approach'] -= 1
                    s['heading'] = math.atan2(dy, dx) + noise * rng.normal()
                    done = True
            if not done:
                s['heading'] = wrap(s['heading'] + turn_sigma * rng.normal())

            # move
            def clear(heading):
                samples = max(1, int(math.ceil(step_length / 0.5)))
                ddx = math.cos(heading) * step_length
                ddy = math.sin(heading) * step_length
                cells, last = [], s['cell']
                for k in range(1, samples + 1):
                    px = s['x'] + ddx * k / samples
                    py = s['y'] + ddy * k / samples
                    cx, cy = math.floor(px), math.floor(py)
                    if not (0 <= cx < w and 0 <= cy < h) or rows[cy][cx] == '#':
                        return None
                    c = cy * w + cx
                    if c != last:
                        cells.append(c)
                        last = c
                return cells, s['x'] + ddx, s['y'] + ddy

            heading = s['heading']
            res = clear(heading)
            r = 0
            while res is None and r < retries:
                heading = s['heading'] + 0.5 * math.pi * rng.normal()
                res = clear(heading)
                r += 1
            if res is None:
                s['heading'] = wrap(s['heading'] + math.pi)
                continue
            s['heading'] = wrap(heading)
            cells, s['x'], s['y'] = res
            for c in cells:
                coverage[c] += 1
                encounter(sensing[s['cell']], sensing[c])
                s['cell'] = c
    return coverage, sorted(detected)


CASES = {
    'adjacent_patch': dict(rows=['.....', '.....', '..HY.', '.....', '.....'], cell_size=1.0,
                           kappa=100.0, scouts=1, sph=10, hours=10.0, radius=1, seed=42),
    'walled_field': dict(rows=['YY..#.....',
                               'YY..#..YY.',
                               '....#..YY.',
                               '..H.......',
                               '....#.....',
                               '..A.#..Y..',
                               '....#..Y..',
                               '....#.....'], cell_size=1.0, kappa=0.5, scouts=3, sph=4,
                         hours=9.0, radius=1, seed=7),
    'leashed': dict(rows=['..........', '..........', '....H.....', '..........', '.......YY.'],
                    cell_size=1.0, kappa=0.2, scouts=4, sph=6, hours=5.0, radius=1, seed=11,
                    max_range_m=2.5),
    'relay_gap': dict(rows=['.....#......', '.....#..YY..', '.H..A.......', '.....#......', '.....#..Y...'],
                      cell_size=1.0, kappa=0.3, scouts=4, sph=6, hours=6.0, radius=2, seed=3),
}


if __name__ == '__main__':
    for name, case in CASES.items():
        cov, det = simulate(**case)
        print(name)
        print('  coverage =', ','.join(map(str, cov)))
        print('  detected =', det)
