"""Rows transcribed from published tables of real quadratic fields with 3-class group of type (3,3).

TKTs are stored as canonical digits; blank length cells are left out.
"""

IPAD_U_GROUND = """\
# U-tree, ground state
disc=342664 ipad=[11;21,21,21,32] tkt=1124 len=Exactly3
disc=1452185 ipad=[11;21,21,21,32] tkt=1124 len=Exactly3
disc=1787945 ipad=[11;21,21,21,32] tkt=1124 len=Exactly3
disc=4760877 ipad=[11;21,21,21,32] tkt=1124 len=Exactly2
disc=4861720 ipad=[11;21,21,21,32] tkt=1124 len=Exactly3
disc=5976988 ipad=[11;21,21,21,32] tkt=1124 len=Exactly3
disc=6098360 ipad=[11;21,21,21,32] tkt=1134 len=Exactly3
disc=6652929 ipad=[11;21,21,21,32] tkt=1124 len=Exactly2
disc=7100889 ipad=[11;21,21,21,32] tkt=1134 len=Exactly3
disc=7358937 ipad=[11;21,21,21,32] tkt=1124 len=Exactly2
disc=8079101 ipad=[11;21,21,21,32] tkt=1124 len=Exactly3
disc=8632716 ipad=[11;21,21,21,32] tkt=1134 len=Exactly2
disc=8711453 ipad=[11;21,21,21,32] tkt=1243 len=Exactly3
disc=9129480 ipad=[11;21,21,21,32] tkt=1124 len=Exactly2
disc=9448265 ipad=[11;21,21,21,32] tkt=1243 len=TwoOrThree
"""

IPAD_Q_GROUND = """\
# Q-tree, ground state
disc=1162949 ipad=[11;111,21,21,32] tkt=2111 len=TwoOrThree
disc=2747001 ipad=[11;111,21,21,32] tkt=2111 len=Exactly3
disc=3122232 ipad=[11;111,21,21,32] tkt=2111 len=TwoOrThree
disc=3918837 ipad=[11;111,21,21,32] tkt=2311 len=Exactly2
disc=4074493 ipad=[11;111,21,21,32] tkt=2111 len=TwoOrThree
disc=5264069 ipad=[11;111,21,21,32] tkt=1122 len=Exactly3
disc=6946573 ipad=[11;111,21,21,32] tkt=1122 len=Exactly3
disc=7153097 ipad=[11;111,21,21,32] tkt=1122 len=Exactly2
disc=8897192 ipad=[11;111,21,21,32] tkt=2311 len=Exactly2
disc=9433849 ipad=[11;111,21,21,32] tkt=2311 len=Exactly3
"""

IPAD_U_EXCITED = """\
# U-tree, first excited state
disc=26889637 ipad=[11;21,21,21,43] tkt=1134 len=Exactly2
disc=59479964 ipad=[11;21,21,21,43] tkt=1243 len=TwoOrThree
disc=79043324 ipad=[11;21,21,21,43] tkt=1124 len=Exactly2
disc=98755469 ipad=[11;21,21,21,43] tkt=1134 len=Exactly2
disc=111121161 ipad=[11;21,21,21,43] tkt=1124 len=Exactly2
disc=135445241 ipad=[11;21,21,21,43] tkt=1124 len=Exactly2
disc=147910989 ipad=[11;21,21,21,43] tkt=1134 len=Exactly2
disc=155191657 ipad=[11;21,21,21,43] tkt=1124 len=Exactly2
disc=157423029 ipad=[11;21,21,21,43] tkt=1243 len=TwoOrThree
disc=178243036 ipad=[11;21,21,21,43] tkt=1124 len=Exactly3
disc=188823317 ipad=[11;21,21,21,43] tkt=1134 len=Exactly2
disc=209483033 ipad=[11;21,21,21,43] tkt=1243 len=AtLeast3
disc=227396348 ipad=[11;21,21,21,43] tkt=1243 len=TwoOrThree
disc=230668493 ipad=[11;21,21,21,43] tkt=1124
disc=248917036 ipad=[11;21,21,21,43] tkt=1124
disc=249304648 ipad=[11;21,21,21,43] tkt=1124
disc=264062393 ipad=[11;21,21,21,43] tkt=1124
disc=292399937 ipad=[11;21,21,21,43] tkt=1134 len=Exactly3
"""

IPAD_Q_EXCITED = """\
# Q-tree, first excited state
disc=70539596 ipad=[11;111,21,21,43] tkt=2311 len=Exactly3
disc=75393861 ipad=[11;111,21,21,43] tkt=1122 len=Exactly3
disc=111046577 ipad=[11;111,21,21,43] tkt=1122 len=Exactly2
disc=113284396 ipad=[11;111,21,21,43] tkt=2311 len=Exactly2
disc=126691957 ipad=[11;111,21,21,43] tkt=2111 len=Exactly3
disc=136970636 ipad=[11;111,21,21,43] tkt=2311 len=Exactly2
disc=170356565 ipad=[11;111,21,21,43] tkt=2111 len=TwoOrThree
"""

# IPAD frequencies with first component (1,1): count and least discriminant;
# the trailing comment is the absolute row rank
IPAD_FREQUENCIES = """\
ipad=[11;11,11,11,21] num=208236 min=32009  # 1
ipad=[11;11,11,11,111] num=122955 min=142097  # 2
ipad=[11;11,11,11,22] num=26678 min=62501  # 4
ipad=[11;111,21,21,21] num=13712 min=422573  # 5
ipad=[11;11,11,11,32] num=11780 min=494236  # 6
ipad=[11;111,111,21,21] num=6691 min=631769  # 9
ipad=[11;111,111,111,21] num=6583 min=957013  # 10
ipad=[11;21,21,21,22] num=4377 min=540365  # 11
ipad=[11;111,21,21,22] num=4318 min=534824  # 12
ipad=[11;21,21,21,32] num=1958 min=342664  # 16
ipad=[11;111,21,21,32] num=1880 min=1162949  # 17
ipad=[11;21,21,21,21] num=1636 min=214712  # 18
ipad=[11;111,111,22,22] num=1410 min=710652  # 19
ipad=[11;111,111,22,32] num=1251 min=1535117  # 21
ipad=[11;11,11,11,33] num=921 min=2905160  # 25
ipad=[11;11,11,11,43] num=391 min=10200108  # 32
ipad=[11;111,111,32,32] num=234 min=8321505  # 38
ipad=[11;21,21,21,33] num=146 min=1001957  # 43
ipad=[11;111,21,21,33] num=138 min=13714789  # 45
ipad=[11;111,111,22,33] num=101 min=17802872  # 48
ipad=[11;21,21,21,43] num=81 min=26889637  # 55
ipad=[11;111,21,21,43] num=66 min=70539596  # 59
ipad=[11;111,111,32,33] num=40 min=8491713  # 66
ipad=[11;111,111,22,43] num=31 min=27970737  # 70
ipad=[11;11,11,11,44] num=25 min=40980808  # 74
ipad=[11;111,111,32,43] num=23 min=8127208  # 76
ipad=[11;11,11,11,54] num=12 min=37304664  # 86
ipad=[11;111,21,21,44] num=5 min=174458681  # 114
ipad=[11;21,21,21,44] num=5 min=116043324  # 115
ipad=[11;111,111,22,54] num=4 min=131279821  # 116
ipad=[11;111,111,22,44] num=3 min=343438961  # 129
ipad=[11;21,21,21,54] num=3 min=124813084  # 130
ipad=[11;111,111,33,33] num=2 min=180527768  # 151
ipad=[11;111,21,21,54] num=1 min=336698284  # 165
ipad=[11;111,21,21,65] num=1 min=705576037  # 170
"""

# rank -> screening category, for the frequency rows above
SCREEN_EXPECTED = {
    1: "maximal class", 2: "maximal class", 4: "maximal class", 6: "maximal class",
    25: "maximal class", 32: "maximal class", 74: "maximal class", 86: "maximal class",
    10: "sporadic4",
    9: "branch73", 19: "branch73", 21: "branch73", 38: "branch73", 48: "branch73", 66: "branch73",
    70: "branch73", 76: "branch73", 116: "branch73", 129: "branch73", 151: "branch73",
    17: "Q", 59: "Q", 165: "Q", 170: "Q",
    16: "U", 55: "U", 130: "U",
    12: "homocyclic", 45: "homocyclic", 114: "homocyclic",
    11: "homocyclic", 43: "homocyclic", 115: "homocyclic",
    5: "other", 18: "other",
}

# soluble length of the sporadic H.4 groups by logarithmic order 3m + 2
SOLUBLE_LENGTH_SPORADIC = {
    8: 3, 11: 3, 14: 3, 17: 4, 20: 4, 23: 4, 26: 4, 29: 4, 32: 5, 35: 5, 38: 5, 41: 5,
    44: 5, 47: 5, 50: 5, 53: 5, 56: 5, 59: 5, 62: 5, 65: 6,
}

# H.4 patterns by logarithmic order and path: polarization, singular and regular
# stabilization, with alpha0 left out of every tail
H4_PATTERNS = [
    (8, "", ("32,(311)^3", "111;(11)^9,(111)^3", "[21;(21)^3]^2"), "TwoOrThree"),
    (9, "M-#1;1", ("32,(411)^3", "111;(11)^9,(111)^3", "[21;(21)^3]^2"), "AtLeast3"),
    (9, "M-#1;2", ("32,(411)^3", "111;(11)^9,(111)^3", "[21;(21)^3]^2"), "AtLeast3"),
    (9, "M-#1;3", ("32,(311)^3", "111;(11)^9,(111)^3", "[21;(21)^3]^2"), "TwoOrThree"),
]

# G.16 patterns: polarization and stabilization
G16_PATTERNS = [
    (8, "", ("32,(311)^3", "[21;(21)^3]^3"), "TwoOrThree"),
    (9, "M-#1;1", ("32,(411)^3", "[21;(21)^3]^3"), "AtLeast3"),
    (9, "M-#1;2", ("32,(311)^3", "[21;(21)^3]^3"), "TwoOrThree"),
]
