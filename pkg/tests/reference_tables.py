"""Frozen reference values for the direction (ray) multiplicity tables.

Each table is a list of (coefficients, lo, hi) triples with coefficients
in ascending degree.  Some published tables let adjacent intervals share
an endpoint; `table_eval` therefore evaluates by the first interval that
contains t, which is well defined because overlapping pieces agree there.
"""

from upqmult.exact import INF, QQ, rational


def table_eval(pieces, t):
    for coeffs, lo, hi in pieces:
        if lo <= t and (hi == INF or t <= hi):
            return sum(QQ(rational(c)) * QQ(t) ** k for k, c in enumerate(coeffs))
    raise ValueError("t=%s not covered" % t)


def last_coeffs(pieces):
    coeffs, lo, hi = pieces[-1]
    assert hi == INF
    return [QQ(rational(c)) for c in coeffs]


# U(2,2), lambda = [[5/2,-3/2],[3/2,-5/2]], v = [[1,0],[0,-1]]
EX5 = [([1, 1], 0, INF)]

# U(2,3), lambda = [[9,7],[-1,-2,-13]], v = [[1,0],[0,0,-1]]
EX6 = [([1, "1/2", "-1/2"], 0, 0), ([1], 1, INF)]

# U(3,3), lambda = [[57/2,39/2,3/2],[51/2,5/2,-155/2]], v = [[1,0,0],[0,0,-1]]
EX7 = [
    ([1, "25/12", "35/24", "5/12", "1/24"], 0, 16),
    ([-3059, "2242/3", "-133/2", "19/6"], 17, 21),
    ([-11914, "9597/4", "-4367/24", "27/4", "-1/24"], 22, 40),
    ([100016, -8664, 228], 41, INF),
]
EX7_LAMBDA = [["57/2", "39/2", "3/2"], ["51/2", "5/2", "-155/2"]]
EX7_V = [[1, 0, 0], [0, 0, -1]]
EX7_SPOT = (2 * 10 ** 6, 911982672100016)

# rays for the U(2,3)/U(2,4)/U(3,3) survey; lambda, v, p, q, table
A_LAM_23 = [[9, 7], [-1, -2, -13]]

A1 = (A_LAM_23, [[1, 0], [-1, 0, 0]], 2, 3, [
    ([1, "1/2", "-1/2"], 0, 0),
    ([1, "-3/2", "1/2"], 1, 1),
    ([0], 2, INF),
])

A2 = (A_LAM_23, [[6, 1], [-1, -1, -5]], 2, 3, [
    ([1, "7/2", "-15/2"], 0, 0),
    ([1], 1, 10),
    ([66, "-23/2", "1/2"], 11, 11),
    ([0], 12, INF),
])

A3 = (A_LAM_23, [[1, 0], [0, 0, -1]], 2, 3, [
    ([1, "1/2", "-1/2"], 0, 0),
    ([1], 1, INF),
])

A4 = ([[59, 39], [51, 7, -156]], [[1, 0], [0, 0, -1]], 2, 3, [
    ([1, 1], 0, INF),
])

A5 = ([["341/2", "49/2"], ["-3/2", "-5/2", "-11/2", "-371/2"]],
      [[6, 1], [-1, -1, -1, -4]], 2, 4, [
    ([1, "10/3", "-7/2", "25/6"], 0, 0),
    ([1, "1/3", "-1/2", "1/6"], 1, 1),
    ([1], 1, 2),
    ([6, "-7/2", "1/2"], 2, 3),
    ([0], 3, INF),
])

A_LAM_33 = [["343/2", "31/2", "21/2"], ["-13/2", "-19/2", "-363/2"]]

A6 = (A_LAM_33, [[6, 1, 0], [-1, -1, -5]], 3, 3, [
    ([1, "13/4", "-51/8", "61/4", "-89/8"], 0, 0),
    ([1, "3/2", "1/2"], 1, 1),
    ([-3, "27/4", "-1/8", "-3/4", "1/8"], 2, 3),
    ([6], 4, 170),
    ([32664996, "-9380059/12", "168227/24", "-335/12", "1/24"], 171, 172),
    ([15225, "-349/2", "1/2"], 172, 173),
    ([78155000, "-10718575/6", "183749/12", "-175/3", "1/12"], 174, 175),
    ([0], 176, INF),
])

A7 = (A_LAM_33, [[1, 1, 0], [0, -1, -1]], 3, 3, [
    ([1, "5/4", "1/24", "-1/4", "-1/24"], 0, 0),
    ([1, 1], 1, 154),
    ([23726781, "-2457885/4", "143207/24", "-103/4", "1/24"], 155, 156),
    ([156], 156, INF),
])

A_TABLES = {"A1": A1, "A2": A2, "A3": A3, "A4": A4, "A5": A5, "A6": A6, "A7": A7}

# U(3,4), lambda = [[473,39,1],[3,51,5,-572]], v = [[1,0,0],[0,0,0,-1]]
EX2_LAMBDA = [[473, 39, 1], [3, 51, 5, -572]]
EX2_V = [[1, 0, 0], [0, 0, 0, -1]]
EX2 = [
    ([1, "51/20", "851/360", "23/24", "5/36", "-1/120", "-1/360"], 0, 0),
    ([1, "31/12", "19/8", "11/12", "1/8"], 1, 37),
    ([-3262622, "2687514/5", "-13275857/360", "64795/48", "-3977/144",
      "73/240", "-1/720"], 38, 39),
    ([-265030, 27790, -1090, 20], 39, 44),
    ([-9631849, "79305707/60", "-3399664/45", "110609/48", "-5675/144",
      "29/80", "-1/720"], 45, 45),
    ([27182687, "-212385511/60", "69073219/360", "-132929/24", "1619/18",
      "-31/40", "1/360"], 46, 46),
    ([-784945, "886169/12", "-20959/8", "511/12", "-1/8"], 47, 83),
    ([469370132, "-337238937/10", "363465857/360", "-774005/48", "20897/144",
      "-167/240", "1/720"], 84, 85),
    ([5790400, -235000, 2820], 86, INF),
]
EX2_CONDENSED = [
    ([1, "31/12", "19/8", "11/12", "1/8"], 0, 39),
    ([-265030, 27790, -1090, 20], 40, 46),
    ([-784945, "886169/12", "-20959/8", "511/12", "-1/8"], 47, 85),
    ([5790400, -235000, 2820], 86, INF),
]
EX2_SPOT = (2 * 10 ** 7, 1127995300005790400)
