"""Recipe texts with their expected diagnostic (code, line, column)."""

VP = "viewport 0 0 1 1 10 10\n"
BASE = "base solid #ffffff\n"
OUT = "render out.ppm\n"
MINIMAL = VP + BASE + OUT


def wrap(body: str) -> str:
    """Body lands on line 3."""
    return VP + BASE + body + "\n" + OUT


# (name, text, expected code or None, line, col)
CORPUS = [
    ("minimal", MINIMAL, None, 0, 0),
    ("version", "version 1\n" + MINIMAL, None, 0, 0),
    ("crlf", MINIMAL.replace("\n", "\r\n"), None, 0, 0),
    ("comments and blanks", "# title\n\n  " + VP + BASE + "   # indented comment\n" + OUT,
     None, 0, 0),
    ("inline comment", wrap("vortex 0 0 1e-3 1e-6 10  # spin"), None, 0, 0),
    ("all steps", wrap("vortex 0 0 1e-3 1e-6 10\nline -1 0 3 4 0.1 0.02\n"
                       "circle 0 0 0.5 -2 0.1\ndrop .2 -.3 1E-2 #A0b1C2"), None, 0, 0),
    ("half base", VP + "base half y #000000 #ffffff\n" + OUT, None, 0, 0),
    ("stripes base", VP + "base stripes 0.1 0.05 #000000 #ffffff\n" + OUT, None, 0, 0),
    ("rings base", VP + "base rings 0.5 0.5 0.1 #000000 #ffffff\n" + OUT, None, 0, 0),
    ("checker base", VP + "base checker 0.25 #000000 #ffffff # note\n" + OUT, None, 0, 0),
    ("supersample", VP + BASE + "render out.ppm supersample 4\n", None, 0, 0),
    ("E01 unknown keyword", wrap("  swirl 1 2"), "E01", 3, 3),
    ("E02 too few", wrap("vortex 0 0 1e-3 1e-6"), "E02", 3, 21),
    ("E02 too many", wrap("drop 0 0 1 #ffffff 7"), "E02", 3, 20),
    ("E02 comment cuts arguments", wrap("circle 0 0 1 # 2 3"), "E02", 3, 14),
    ("E02 supersample without factor", VP + BASE + "render a.ppm supersample\n", "E02", 3, 25),
    ("E03 bad number", wrap("vortex 0 0 abc 1e-6 10"), "E03", 3, 12),
    ("E03 hex is not a number", wrap("vortex 0 0 0x10 1e-6 10"), "E03", 3, 12),
    ("E04 overflow", wrap("circle 0 0 1e999 1 1"), "E04", 3, 12),
    ("E05 zero viscosity", wrap("vortex 0 0 1e-3 0 10"), "E05", 3, 17),
    ("E05 negative lambda", wrap("line 0 0 1 0 1 -2"), "E05", 3, 16),
    ("E06 short color", wrap("drop 0 0 1 #ffff"), "E06", 3, 12),
    ("E07 fractional pixels", "viewport 0 0 1 1 10.5 10\n" + BASE + OUT, "E07", 1, 18),
    ("E08 zero direction", wrap("line 0 0 0 0 1 1"), "E08", 3, 1),
    ("E09 negative time", wrap("vortex 0 0 1e-3 1e-6 -1"), "E09", 3, 22),
    ("E10 duplicate viewport", VP + VP + BASE + OUT, "E10", 2, 1),
    ("E11 missing viewport", BASE + OUT, "E11", 3, 1),
    ("E12 missing base", VP + OUT, "E12", 3, 1),
    ("E13 missing render", VP + BASE, "E13", 3, 1),
    ("E14 supersample 3", VP + BASE + "render o.ppm supersample 3\n", "E14", 3, 26),
    ("E15 unknown version", "version 2\n" + MINIMAL, "E15", 1, 9),
    ("E15 late version", VP + "version 1\n" + BASE + OUT, "E15", 2, 1),
    ("E16 non-square pixels", "viewport 0 0 1 2 10 10\n" + BASE + OUT, "E16", 1, 1),
    ("E17 bad axis", VP + "base half z #000000 #ffffff\n" + OUT, "E17", 2, 11),
    ("E18 invalid utf-8", (VP + "\xff").encode("latin-1"), "E18", 2, 1),
    ("E19 unknown base", VP + "base spots #000000\n" + OUT, "E19", 2, 6),
]
