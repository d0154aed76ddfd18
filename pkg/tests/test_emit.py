from fractions import Fraction

from src.app.polytope.emit import emit_lp
from src.app.polytope.formulation import ExtendedFormulation, leaf_formulation, make_row, nonnegative

from .helpers import generators


def test_rows_are_scaled_to_integers() -> None:
    f = ExtendedFormulation(
        ("x_1", "x_2"),
        (make_row({"x_1": Fraction(1, 2), "x_2": Fraction(1, 3)}, rhs=1, name="c"), nonnegative("x_1")),
        ("x_1", "x_2"),
        ("demo",),
    )
    assert emit_lp(f) == (
        "\\ stable set polytope\n"
        "\\ demo\n"
        "\\ 2 variables, 2 rows, 2 original\n"
        "Maximize\n"
        "   obj: x_1 + x_2\n"
        "Subject To\n"
        "   c_0: 3 x_1 + 2 x_2 <= 6\n"
        "   nonneg_1: - x_1 <= 0\n"
        "Bounds\n"
        "   x_1 free\n"
        "   x_2 free\n"
        "End\n"
    )


def test_long_rows_wrap() -> None:
    names = tuple(f"x_{i}" for i in range(1, 11))
    f = ExtendedFormulation(names, (), names)
    text = emit_lp(f, title="ten")
    assert text.startswith("\\ ten\n")
    objective = text.split("Maximize\n")[1].split("Subject To")[0]
    assert len(objective.strip().splitlines()) == 2


def test_objective_weights() -> None:
    f = leaf_formulation(generators.path(2))
    text = emit_lp(f, {"x_1": 3, "x_2": -1})
    assert "   obj: 3 x_1 - x_2\n" in text
    assert text.count(" free\n") == len(f.variables)
