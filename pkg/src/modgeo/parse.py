"""Text syntax for exact values and integer polynomials.

Value grammar (whitespace-insensitive, evaluated exactly):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('+'|'-')* atom
    atom   := INT | 'sqrt' '(' expr ')' | '(' expr ')'

sqrt accepts a nonnegative rational subexpression.  Expressions mixing
two radicands (like sqrt(2)+sqrt(3)) denote degree-4 numbers and are
rejected as parse errors; degree-4 fields live in the fields module.

format_value is the inverse: it prints a canonical expression string
that parses back to the same value.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IncompatibleFieldsError, InvalidRadicandError, ParseError
from .exact import QuadElem, sqrt_rational
from .slopes import INF, GenericSlope


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word != "sqrt":
                raise ParseError(f"unknown name {word!r}")
            tokens.append(("sqrt", None))
            i = j
            continue
        if ch in "+-*/()":
            tokens.append((ch, None))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}")
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}")
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in "+-":
            op = self.next()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in "*/":
            op = self.next()[0]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not isinstance(rhs, QuadElem) and rhs == 0:
                    raise ParseError("division by zero")
                value = value / rhs
        return value

    def factor(self):
        sign = 1
        while self.peek() in "+-":
            if self.next()[0] == "-":
                sign = -sign
        return sign * self.atom()

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return Fraction(val)
        if kind == "sqrt":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            if isinstance(inner, QuadElem):
                raise ParseError("nested radicals are not supported")
            try:
                return sqrt_rational(inner)
            except InvalidRadicandError as exc:
                raise ParseError(str(exc)) from exc
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {kind!r}")


def parse_value(text: str):
    """Parse an exact value: Fraction or QuadElem."""
    parser = _Parser(_tokenize(text))
    try:
        value = parser.expr()
    except IncompatibleFieldsError as exc:
        raise ParseError(f"expression mixes radicands: {exc}") from exc
    except ZeroDivisionError as exc:
        raise ParseError("division by zero") from exc
    parser.expect("end")
    return value


def parse_slope(text: str):
    """Parse a slope: value syntax plus 'inf' and 'generic:LABEL'."""
    stripped = text.strip()
    low = stripped.lower()
    if low in ("inf", "oo", "infinity"):
        return INF
    if low.startswith("generic:"):
        label = stripped[len("generic:"):].strip()
        if not label:
            raise ParseError("generic slope needs a label")
        return GenericSlope(label)
    return parse_value(text)


def format_value(x) -> str:
    """Canonical expression string; parse_value(format_value(x)) == x."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if not isinstance(x, QuadElem):
        raise TypeError(f"cannot format {type(x).__name__}")
    den = max(x.a.denominator, 1)
    den = den * x.b.denominator // _gcd(den, x.b.denominator)
    na = int(x.a * den)
    nb = int(x.b * den)
    g = _gcd(_gcd(abs(na), abs(nb)), den)
    na, nb, den = na // g, nb // g, den // g
    core = _format_int_combo(na, nb, x.d)
    if den == 1:
        return core
    if na != 0 or nb < 0:
        return f"({core})/{den}"
    return f"{core}/{den}"


def format_slope(s) -> str:
    if s is INF:
        return "inf"
    if isinstance(s, GenericSlope):
        return f"generic:{s.label}"
    return format_value(s)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _format_int_combo(na: int, nb: int, d: int) -> str:
    root = f"sqrt({d})"
    if nb == 1:
        bpart = root
    elif nb == -1:
        bpart = f"-{root}"
    else:
        bpart = f"{nb}*{root}"
    if na == 0:
        return bpart
    if nb > 0:
        return f"{na}+{bpart}"
    return f"{na}{bpart}" if bpart.startswith("-") else f"{na}-{bpart}"


# -- integer polynomials -----------------------------------------------


def parse_intpoly(text: str) -> tuple[int, ...]:
    """Parse an integer polynomial in x, e.g. 'x^4 - 10*x^2 + 1'.

    Returns ascending coefficients.
    """
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    # split into signed terms
    terms = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-^*":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    coeffs: dict[int, int] = {}
    for term in terms:
        if not term or term in "+-":
            raise ParseError(f"malformed term in {text!r}")
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        coeff, power = 1, 0
        if "x" in term:
            head, _, tail = term.partition("x")
            head = head.rstrip("*")
            if head:
                if not head.lstrip("-").isdigit():
                    raise ParseError(f"bad coefficient {head!r}")
                coeff = int(head)
            if tail:
                if not tail.startswith("^") or not tail[1:].isdigit():
                    raise ParseError(f"bad exponent in {term!r}")
                power = int(tail[1:])
            else:
                power = 1
        else:
            if not term.isdigit():
                raise ParseError(f"bad term {term!r}")
            coeff = int(term)
        coeffs[power] = coeffs.get(power, 0) + sign * coeff
    deg = max(coeffs)
    out = tuple(coeffs.get(k, 0) for k in range(deg + 1))
    while len(out) > 1 and out[-1] == 0:
        out = out[:-1]
    if out == (0,):
        raise ParseError("zero polynomial")
    return out


def format_intpoly(coeffs) -> str:
    """Inverse of parse_intpoly for integer coefficient sequences."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            mono = str(abs(c))
        else:
            xs = "x" if k == 1 else f"x^{k}"
            mono = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
        if not parts:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(f" + {mono}" if c > 0 else f" - {mono}")
    return "".join(parts) if parts else "0"
