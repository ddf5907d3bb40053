"""Canonical binary-tree words for free anticommutative algebras.

A word is a binary tree whose leaves are generator indices: a leaf is an
``int``, an internal node a pair ``(left, right)``.  Anticommutativity lets
every tree be rewritten, up to sign, into a unique canonical representative:

* a node ``(L, R)`` is canonical iff both children are canonical and L
  strictly precedes R in the word order below;
* a node with equal children is the zero word.

The word order puts *higher* degree first and breaks ties by recursive
lexicographic comparison.  With that choice the canonical multilinear words
of degree 3 are the left-normed brackets ((x_i x_j) x_k), printed
``[xi,xj,xk]``, which is the notation the rest of the package uses in basis
labels.
"""

from __future__ import annotations


def degree(tree) -> int:
    if isinstance(tree, int):
        return 1
    return degree(tree[0]) + degree(tree[1])


def letters(tree) -> tuple[int, ...]:
    """Sorted multiset of generator indices in the word."""
    out: list[int] = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, int):
            out.append(t)
        else:
            stack.extend(t)
    return tuple(sorted(out))


def has_repeated_letter(tree) -> bool:
    ls = letters(tree)
    return any(a == b for a, b in zip(ls, ls[1:]))


def order_key(tree):
    """Total-order key: degree descending is handled by the comparison
    wrappers; among equal degrees this key orders lexicographically."""
    if isinstance(tree, int):
        return (1, tree)
    return (degree(tree), order_key(tree[0]), order_key(tree[1]))


def precedes(a, b) -> bool:
    """True iff a strictly precedes b in the word order (degree first,
    larger degree earlier, then recursive lexicographic)."""
    da, db = degree(a), degree(b)
    if da != db:
        return da > db
    return order_key(a) < order_key(b)


def canonicalize(tree):
    """Return (sign, canonical_tree) with sign in {1, -1}, or (0, None)
    for the zero word."""
    if isinstance(tree, int):
        return 1, tree
    sl, left = canonicalize(tree[0])
    if sl == 0:
        return 0, None
    sr, right = canonicalize(tree[1])
    if sr == 0:
        return 0, None
    kl, kr = order_key(left), order_key(right)
    if kl == kr:
        return 0, None
    if precedes(left, right):
        return sl * sr, (left, right)
    return -sl * sr, (right, left)


def mirror(tree):
    if isinstance(tree, int):
        return tree
    return (mirror(tree[1]), mirror(tree[0]))


def words_by_degree(n_gens: int, max_degree: int) -> list[list]:
    """All canonical words on n_gens generators, grouped by degree.

    Index 0 of the result holds the degree-1 words (the generators) so the
    list has max_degree entries.  Within a degree, words are sorted by
    order_key, which makes basis enumeration deterministic.
    """
    by_deg: list[list] = [[i for i in range(n_gens)]]
    for d in range(2, max_degree + 1):
        words = []
        for dl in range(d - 1, (d + 1) // 2 - 1, -1):
            dr = d - dl
            lefts = by_deg[dl - 1]
            rights = by_deg[dr - 1]
            if dl > dr:
                words.extend((l, r) for l in lefts for r in rights)
            else:
                # dl == dr: strictly increasing pairs only
                for i, l in enumerate(lefts):
                    words.extend((l, r) for r in rights[i + 1 :])
        words.sort(key=order_key)
        by_deg.append(words)
    return by_deg


def free_dimension(n_gens: int, max_degree: int) -> list[int]:
    """Dimension of each graded component of the free anticommutative
    algebra, computed by the counting recurrence (independent of the tree
    enumeration): a(1) = n, a(d) = sum_{i>d/2} a(i) a(d-i) + C(a(d/2), 2)
    for even d."""
    a = [0, n_gens]
    for d in range(2, max_degree + 1):
        total = 0
        for i in range(d - 1, (d + 1) // 2 - 1, -1):
            j = d - i
            if i > j:
                total += a[i] * a[j]
            else:
                total += a[i] * (a[i] - 1) // 2
        a.append(total)
    return a[1:]


def label(tree, gen_names) -> str:
    """Bracket label; left-nested chains are flattened left-normed style:
    ((x1 x2) x3) -> '[x1,x2,x3]', ((x1 x2)(x3 x4)) -> '[x1,x2,[x3,x4]]'."""
    if isinstance(tree, int):
        return gen_names[tree]
    left, right = tree
    inner = label(left, gen_names)
    if not isinstance(left, int):
        inner = inner[1:-1]
    return f"[{inner},{label(right, gen_names)}]"


def parse_word_label(text: str, gen_names):
    """Parse a bracket label back into a tree (left-normed fold):
    '[x1,x2,x3]' -> ((x1, x2), x3).  Raises ValueError on bad input."""
    name_to_idx = {name: i for i, name in enumerate(gen_names)}
    s = text.strip()
    pos = 0

    def parse_item():
        nonlocal pos
        if pos < len(s) and s[pos] == "[":
            return parse_bracket()
        start = pos
        while pos < len(s) and s[pos] not in ",]":
            pos += 1
        name = s[start:pos].strip()
        if name not in name_to_idx:
            raise ValueError(f"unknown generator {name!r} in {text!r}")
        return name_to_idx[name]

    def parse_bracket():
        nonlocal pos
        pos += 1  # '['
        items = [parse_item()]
        while pos < len(s) and s[pos] == ",":
            pos += 1
            items.append(parse_item())
        if pos >= len(s) or s[pos] != "]":
            raise ValueError(f"unbalanced brackets in {text!r}")
        pos += 1
        if len(items) < 2:
            raise ValueError(f"bracket needs at least two entries: {text!r}")
        tree = items[0]
        for item in items[1:]:
            tree = (tree, item)
        return tree

    tree = parse_item()
    if pos != len(s):
        raise ValueError(f"trailing input in word label {text!r}")
    return tree
