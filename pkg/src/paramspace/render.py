"""Monospace word tables: one row per word, one column per position."""

from __future__ import annotations

from typing import Sequence

from .words import Word


def _token(x) -> str:
    return f"<{x}>" if type(x) is int else x


def render_word_table(
    words: Sequence[Word] = (),
    labels: Sequence[str] | None = None,
    sections: Sequence[tuple] | None = None,
) -> str:
    """Aligned text table.

    Either pass ``words`` (with optional ``labels``) or ``sections``, a list of
    ``(title, words, labels)`` rendered one after another with shared column
    widths.  Returns the empty string when there is nothing to show.
    """
    if sections is None:
        sections = [(None, list(words), labels)]
    blocks = []
    for title, ws, ls in sections:
        ws = list(ws)
        ls = list(ls) if ls is not None else [str(i) for i in range(len(ws))]
        if len(ls) != len(ws):
            raise ValueError("one label per word")
        blocks.append((title, ws, ls))
    rows = [(l, w) for _, ws, ls in blocks for l, w in zip(ls, ws)]
    if not rows:
        return ""
    ncols = max(len(w) for _, w in rows)
    widths = [1] * ncols
    for _, w in rows:
        for j, x in enumerate(w):
            widths[j] = max(widths[j], len(_token(x)))
    for j in range(ncols):
        widths[j] = max(widths[j], len(str(j)))
    lw = max(len(l) for l, _ in rows)

    def line(label, cells):
        body = " ".join(c.ljust(widths[j]) for j, c in enumerate(cells))
        return (label.ljust(lw) + " | " + body).rstrip()

    out = [line("", [str(j) for j in range(ncols)])]
    rule = "-" * len(out[0])
    out.append(rule)
    for i, (title, ws, ls) in enumerate(blocks):
        if title is not None:
            if i:
                out.append(rule)
            out.append(f"[{title}]")
        for l, w in zip(ls, ws):
            out.append(line(l, [_token(x) for x in w]))
    return "\n".join(out) + "\n"
