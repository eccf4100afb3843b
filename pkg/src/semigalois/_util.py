class UnionFind:
    """Plain union-find over 0..n-1 with path halving."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # keep the smaller index as representative so block labels are stable
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def labels(self):
        """Block index per element, blocks numbered by first occurrence."""
        seen = {}
        out = []
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in seen:
                seen[r] = len(seen)
            out.append(seen[r])
        return tuple(out)


def normalize_partition(labels):
    """Relabel a block assignment so blocks are numbered by first occurrence."""
    seen = {}
    return tuple(seen.setdefault(b, len(seen)) for b in labels)
