"""Pure-Python mt19937_64 + Floyd sampling, mirroring the documented
random-placement contract, for freezing pinned oracle sets."""


class MT19937_64:
    def __init__(self, seed):
        m = (1 << 64) - 1
        self.mt = [seed & m]
        for i in range(1, 312):
            prev = self.mt[-1]
            self.mt.append((6364136223846793005 * (prev ^ (prev >> 62)) + i) & m)
        self.i = 312

    def __call__(self):
        if self.i >= 312:
            for i in range(312):
                x = (self.mt[i] & 0xFFFFFFFF80000000) | (self.mt[(i + 1) % 312] & 0x7FFFFFFF)
                xa = x >> 1
                if x & 1:
                    xa ^= 0xB5026F5AA96619E9
                self.mt[i] = self.mt[(i + 156) % 312] ^ xa
            self.i = 0
        y = self.mt[self.i]
        self.i += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & ((1 << 64) - 1)


def draw_below(rng, bound):
    m = (1 << 64) - 1
    limit = m - m % bound
    while True:
        x = rng()
        if x < limit:
            return x % bound


def random_placement(n, t, seed):
    rng = MT19937_64(seed)
    chosen = set()
    for j in range(n - t, n):
        r = draw_below(rng, j + 1)
        chosen.add(j if r in chosen else r)
    return sorted(chosen)


if __name__ == "__main__":
    print("first draw seed 7:", MT19937_64(7)())
    print("N=20 t=5 seed=7:", random_placement(20, 5, 7))
