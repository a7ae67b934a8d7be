"""Slow, independent transcriptions of each formula, used as test oracles.

Nothing here imports the package. Everything is written with explicit
Python loops over pixels and the ``math`` module so that a shared bug with
the vectorized implementation is unlikely.
"""

import math


def to_lists(arr):
    return arr.tolist()


def clamp(i, lo, hi):
    return lo if i < lo else hi if i > hi else i


# --- GL coefficients ----------------------------------------------------------

def gl_gamma(v, K):
    """c_k = Gamma(k - v) / (Gamma(-v) k!), with the integer-order limit by binomials."""
    out = []
    for k in range(K + 1):
        if float(v).is_integer():
            n = int(v)
            out.append((-1) ** k * math.comb(n, k) if k <= n else 0.0)
        else:
            out.append(math.gamma(k - v) / (math.gamma(-v) * math.factorial(k)))
    return out


# --- filtering ------------------------------------------------------------------

def correlate_clamped(plane, mask):
    h, w = len(plane), len(plane[0])
    ry, rx = len(mask) // 2, len(mask[0]) // 2
    out = [[0.0] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for j in range(len(mask)):
                for i in range(len(mask[0])):
                    yy = clamp(y + j - ry, 0, h - 1)
                    xx = clamp(x + i - rx, 0, w - 1)
                    acc += mask[j][i] * plane[yy][xx]
            out[y][x] = acc
    return out


# --- colour -------------------------------------------------------------------

M = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
]
WHITE = [sum(row) for row in M]


def srgb_lin(c):
    return c / 12.92 if c <= 0.04045 else ((c + 0.055) / 1.055) ** 2.4


def lab_pixel(r, g, b):
    lin = [srgb_lin(r), srgb_lin(g), srgb_lin(b)]
    xyz = [sum(M[i][j] * lin[j] for j in range(3)) / WHITE[i] for i in range(3)]

    def f(t):
        d = 6.0 / 29.0
        return t ** (1.0 / 3.0) if t > d ** 3 else t / (3 * d * d) + 4.0 / 29.0

    fx, fy, fz = (f(t) for t in xyz)
    return 116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)


def luma(r, g, b):
    return 0.299 * r + 0.587 * g + 0.114 * b


def pop_mean_std(values):
    n = len(values)
    m = sum(values) / n
    return m, math.sqrt(sum((v - m) ** 2 for v in values) / n)


def colourfulness(rgb255):
    rg, yb = [], []
    for row in rgb255:
        for r, g, b in row:
            rg.append(r - g)
            yb.append((r + g) / 2 - b)
    mrg, srg = pop_mean_std(rg)
    myb, syb = pop_mean_std(yb)
    return math.sqrt(srg ** 2 + syb ** 2) + 0.3 * math.sqrt(mrg ** 2 + myb ** 2)


# --- plane metrics -------------------------------------------------------------

def avg_gradient(p):
    h, w = len(p), len(p[0])
    tot, n = 0.0, 0
    for i in range(h - 1):
        for j in range(w - 1):
            gx = p[i][j + 1] - p[i][j]
            gy = p[i + 1][j] - p[i][j]
            tot += math.sqrt((gx * gx + gy * gy) / 2)
            n += 1
    return tot / n


def entropy(p):
    counts = {}
    for row in p:
        for v in row:
            counts[v] = counts.get(v, 0) + 1
    n = sum(counts.values())
    return -sum(c / n * math.log2(c / n) for c in counts.values())


def quantize(x):
    x = min(max(x, 0.0), 1.0) * 255.0
    return int(math.floor(x + 0.5))


# --- GCF ------------------------------------------------------------------------

def gcf(k_luma):
    """``k_luma``: 2-D list of 0..255 quantized luminance values."""
    lin = [[(k / 255.0) ** 2.2 for k in row] for row in k_luma]
    total = 0.0
    for i in range(1, 10):
        if i > 1:
            h, w = len(lin), len(lin[0])
            nh, nw = (h + 1) // 2, (w + 1) // 2
            small = [[0.0] * nw for _ in range(nh)]
            for y in range(nh):
                for x in range(nw):
                    vals = [lin[yy][xx]
                            for yy in (2 * y, 2 * y + 1) if yy < h
                            for xx in (2 * x, 2 * x + 1) if xx < w]
                    small[y][x] = sum(vals) / len(vals)
            lin = small
        h, w = len(lin), len(lin[0])
        if h < 2 or w < 2:
            continue
        L = [[100 * math.sqrt(v) for v in row] for row in lin]
        acc = 0.0
        for y in range(h):
            for x in range(w):
                s = 0.0
                for dy, dx in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                    s += abs(L[y][x] - L[clamp(y + dy, 0, h - 1)][clamp(x + dx, 0, w - 1)])
                acc += s / 4
        c_i = acc / (h * w)
        wi = (-0.406385 * (i / 9) + 0.334573) * (i / 9) + 0.0877526
        total += wi * c_i
    return total


# --- UIQM -----------------------------------------------------------------------

def trimmed(values, al=0.1, ar=0.1):
    s = sorted(values)
    n = len(s)
    tl, tr = math.ceil(al * n), math.floor(ar * n)
    kept = s[tl:n - tr]
    mu = sum(kept) / len(kept)
    var = sum((v - mu) ** 2 for v in values) / n
    return mu, var


def uicm(rgb255):
    rg = [r - g for row in rgb255 for r, g, b in row]
    yb = [(r + g) / 2 - b for row in rgb255 for r, g, b in row]
    mrg, vrg = trimmed(rg)
    myb, vyb = trimmed(yb)
    return -0.0268 * math.sqrt(mrg ** 2 + myb ** 2) + 0.1586 * math.sqrt(vrg + vyb)


def sobel(p):
    h, w = len(p), len(p[0])
    kx = [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]]
    ky = [[-1, -2, -1], [0, 0, 0], [1, 2, 1]]
    out = [[0.0] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            gx = gy = 0.0
            for j in range(3):
                for i in range(3):
                    v = p[clamp(y + j - 1, 0, h - 1)][clamp(x + i - 1, 0, w - 1)]
                    gx += kx[j][i] * v
                    gy += ky[j][i] * v
            out[y][x] = math.sqrt(gx * gx + gy * gy)
    return out


def block_extrema(p, size=8):
    h, w = len(p), len(p[0])
    res = []
    for by in range(h // size):
        for bx in range(w // size):
            vals = [p[y][x] for y in range(by * size, by * size + size)
                    for x in range(bx * size, bx * size + size)]
            res.append((max(vals), min(vals)))
    return res


def eme(p):
    blocks = block_extrema(p)
    s = 0.0
    for mx, mn in blocks:
        if mn > 0 and mx > mn:
            s += math.log(mx / mn)
    return 2.0 / len(blocks) * s


def uism(rgb255):
    total = 0.0
    for c, wgt in enumerate((0.299, 0.587, 0.114)):
        ch = [[px[c] for px in row] for row in rgb255]
        edges = sobel(ch)
        prod = [[edges[y][x] * ch[y][x] for x in range(len(ch[0]))] for y in range(len(ch))]
        total += wgt * eme(prod)
    return total


def uiconm(rgb255):
    y = [[luma(*px) for px in row] for row in rgb255]
    blocks = block_extrema(y)
    s = 0.0
    for mx, mn in blocks:
        if mx + mn > 0 and mx > mn:
            m = (mx - mn) / (mx + mn)
            s += m * math.log(m)
    return abs(s / len(blocks))


def uiqm(rgb255):
    return 0.0282 * uicm(rgb255) + 0.2953 * uism(rgb255) + 3.5753 * uiconm(rgb255)


# --- UCIQE ----------------------------------------------------------------------

def uciqe(rgb255):
    Ls, chromas, sats = [], [], []
    for row in rgb255:
        for r, g, b in row:
            L, a, bb = lab_pixel(r / 255, g / 255, b / 255)
            L, a, bb = L / 100, a / 100, bb / 100
            c = math.sqrt(a * a + bb * bb)
            Ls.append(L)
            chromas.append(c)
            sats.append(min(max(c / max(L, 1e-6), 0.0), 1.0))
    _, sc = pop_mean_std(chromas)
    s = sorted(Ls)
    n = max(1, int(math.floor(0.01 * len(s) + 0.5)))
    con = sum(s[-n:]) / n - sum(s[:n]) / n
    mu_s = sum(sats) / len(sats)
    return 0.4680 * sc + 0.2745 * con + 0.2576 * mu_s
