"""Published kernel exponents used as reference values by the acceptance checks."""

# (name, partial distances, exponent to three decimals)
SMALL_KERNELS = [
    ("G2", [1, 2], "0.500"),
    ("G3L", [1, 1, 3], "0.333"),
    ("G3H", [1, 2, 2], "0.421"),
    ("G6L", [1, 1, 3, 2, 2, 6], "0.398"),
    ("G6H", [1, 2, 2, 2, 4, 4], "0.451"),
]

# (l, small factors, m, exponent to four decimals) for l = prod(factors) * m,
# where the size-m factor is a shortened kernel known only by its exponent.
COMPOSITE_ROWS = [
    (32, ("G2",), 16, 0.5146), (56, ("G2",), 28, 0.5121), (84, ("G3H",), 28, 0.4914),
    (33, ("G3H",), 11, 0.4492), (57, ("G3H",), 19, 0.4694), (87, ("G3H",), 29, 0.4935),
    (34, ("G2",), 17, 0.4934), (58, ("G2",), 29, 0.5142), (88, ("G2", "G2"), 22, 0.4962),
    (36, ("G2",), 18, 0.4917), (60, ("G2",), 30, 0.5183), (90, ("G3H",), 30, 0.4974),
    (38, ("G2",), 19, 0.4898), (62, ("G2",), 31, 0.5220), (92, ("G2", "G2"), 23, 0.5005),
    (39, ("G3H",), 13, 0.4635), (63, ("G3H",), 21, 0.4695), (93, ("G3H",), 31, 0.5009),
    (40, ("G2",), 20, 0.4972), (64, ("G2", "G2"), 16, 0.5122), (96, ("G2", "G2"), 24, 0.5031),
    (42, ("G2",), 21, 0.4895), (66, ("G3H",), 22, 0.4752), (100, ("G2", "G2"), 25, 0.5003),
    (44, ("G2",), 22, 0.4955), (68, ("G2", "G2"), 17, 0.4945), (104, ("G2", "G2"), 26, 0.5033),
    (45, ("G3H",), 15, 0.4756), (69, ("G3H",), 23, 0.4800), (108, ("G2", "G2"), 27, 0.5059),
    (46, ("G2",), 23, 0.5006), (72, ("G2", "G2"), 18, 0.4930), (112, ("G2", "G2"), 28, 0.5103),
    (48, ("G2",), 24, 0.5037), (75, ("G3H",), 25, 0.4802), (116, ("G2", "G2"), 29, 0.5121),
    (50, ("G2",), 25, 0.5003), (76, ("G2", "G2"), 19, 0.4914), (120, ("G2", "G2"), 30, 0.5157),
    (51, ("G3H",), 17, 0.4720), (78, ("G3H",), 26, 0.4836), (124, ("G2", "G2"), 31, 0.5188),
    (52, ("G2",), 26, 0.5039), (80, ("G2", "G2"), 20, 0.4977), (126, ("G2", "G3H"), 21, 0.4737),
    (54, ("G2",), 27, 0.5069), (81, ("G3H",), 27, 0.4865), (128, ("G2", "G2", "G2"), 16, 0.5104),
]
