"""Parser for the test-function descriptor language.

Grammar (whitespace is ignored everywhere)::

    expr   := atom | jw | scale | conv | smooth | sum | conj
    atom   := "loggauss:" param ("," param)*      params a, mu, amp
    jw     := "j" ("1" | "2") "(" expr ")"
    scale  := "scale:" number "(" expr ")"
    conv   := "conv(" expr "," expr ")"
    smooth := "smooth(" expr ")"
    sum    := "sum(" expr (";" expr)* ")"
    conj   := "conj(" expr ")"

``a`` is required and positive; ``mu`` defaults to 0 and ``amp`` to 1.
``amp`` also accepts a Python complex literal such as ``1+2j``.
"""

import re

from .errors import DomainError, ParseError
from .mellin import apply_J, conj, fsum, log_gaussian, mult_convolve, scale_action, smoothed_image

_NUMBER = re.compile(r"[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?")


class _Parser:
    def __init__(self, text):
        self.src = "".join(text.split())
        self.pos = 0

    def fail(self, what):
        token = self.src[self.pos:self.pos + 12] or "<end>"
        raise ParseError(f"{what} at position {self.pos}: {token!r}", token)

    def peek(self, literal):
        return self.src.startswith(literal, self.pos)

    def expect(self, literal):
        if not self.peek(literal):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def number(self):
        m = _NUMBER.match(self.src, self.pos)
        if not m:
            self.fail("expected a number")
        self.pos = m.end()
        return float(m.group())

    def amp(self):
        end = self.pos
        while end < len(self.src) and self.src[end] not in ",;)":
            end += 1
        raw = self.src[self.pos:end]
        try:
            value = complex(raw)
        except ValueError:
            self.fail("bad amplitude")
        self.pos = end
        return value

    def expr(self):
        start = self.pos
        if self.peek("loggauss:"):
            return self.loggauss()
        if self.peek("scale:"):
            self.expect("scale:")
            lam = self.number()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return self.build(start, scale_action, inner, lam)
        for w in ("1", "2"):
            if self.peek(f"j{w}("):
                self.expect(f"j{w}(")
                inner = self.expr()
                self.expect(")")
                return apply_J(inner, int(w))
        if self.peek("conv("):
            self.expect("conv(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return self.build(start, mult_convolve, left, right)
        if self.peek("smooth("):
            self.expect("smooth(")
            inner = self.expr()
            self.expect(")")
            return self.build(start, smoothed_image, inner)
        if self.peek("conj("):
            self.expect("conj(")
            inner = self.expr()
            self.expect(")")
            return conj(inner)
        if self.peek("sum("):
            self.expect("sum(")
            terms = [self.expr()]
            while self.peek(";"):
                self.expect(";")
                terms.append(self.expr())
            self.expect(")")
            return fsum(*terms)
        self.fail("unknown expression")

    def build(self, start, ctor, *args):
        # constructor errors point back at the start of the offending expression
        try:
            return ctor(*args)
        except DomainError as exc:
            self.pos = start
            self.fail(str(exc))

    def loggauss(self):
        start = self.pos
        self.expect("loggauss:")
        params = {}
        while True:
            m = re.compile(r"(a|mu|amp)=").match(self.src, self.pos)
            if not m:
                self.fail("expected a=, mu= or amp=")
            key = m.group(1)
            if key in params:
                self.fail(f"duplicate parameter {key!r}")
            self.pos = m.end()
            params[key] = self.amp() if key == "amp" else self.number()
            # a comma followed by another key continues the parameter list
            if self.peek(",") and re.compile(r",(a|mu|amp)=").match(self.src, self.pos):
                self.pos += 1
                continue
            break
        if "a" not in params or not params["a"] > 0:
            self.pos = start
            self.fail("loggauss needs a > 0")
        return log_gaussian(params["a"], params.get("mu", 0.0), params.get("amp", 1.0))


def parse_function(text):
    """Parse one descriptor into a normalised TestFunction tree."""
    p = _Parser(text)
    if not p.src:
        raise ParseError("empty expression", "<empty>")
    node = p.expr()
    if p.pos != len(p.src):
        p.fail("trailing input")
    return node
