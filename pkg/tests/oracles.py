"""Independent reference implementations used only by the tests."""

from decimal import Decimal, getcontext
from fractions import Fraction


def pearson_exact(x, y) -> float:
    """Direct formula in exact rational arithmetic, final square root in 60-digit decimals."""
    fx = [Fraction(v) for v in x]
    fy = [Fraction(v) for v in y]
    n = len(fx)
    mx, my = sum(fx) / n, sum(fy) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(fx, fy))
    sxx = sum((a - mx) ** 2 for a in fx)
    syy = sum((b - my) ** 2 for b in fy)
    r2 = sxy * sxy / (sxx * syy)
    getcontext().prec = 60
    root = (Decimal(r2.numerator) / Decimal(r2.denominator)).sqrt()
    return float(root if sxy >= 0 else -root)


def u_pair_count(a, b) -> Fraction:
    """U of ``a``: pairs where a wins, plus half of the ties."""
    u = Fraction(0)
    for x in a:
        for y in b:
            if x > y:
                u += 1
            elif x == y:
                u += Fraction(1, 2)
    return u


# Threat rows written out independently of the package's own table.
TABLE_2 = {
    "denial_of_service": ["SM01", "SM02", "SM03", "SM04", "SM06", "SM07", "SM10", "SM12"],
    "intent_spoofing": ["SM02", "SM03", "SM04", "SM05", "SM07", "SM08", "SM09", "SM10", "SM11"],
    "intent_hijacking": ["SM02", "SM03", "SM04", "SM05", "SM10", "SM11"],
}
