from typing import Dict, Generic, Hashable, Iterable, List, TypeVar

T = TypeVar("T", bound=Hashable)


class UnionFind(Generic[T]):
    """Disjoint sets that remember insertion order.

    ``classes()`` lists each class in insertion order of its members, and
    orders classes by their earliest member, so partitions are reproducible.
    """

    def __init__(self, elements: Iterable[T] = ()):
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}
        self.order: Dict[T, int] = {}
        for e in elements:
            self.add(e)

    def add(self, e: T):
        if e not in self.parent:
            self.parent[e] = e
            self.rank[e] = 0
            self.order[e] = len(self.order)

    def find(self, e: T) -> T:
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, a: T, b: T) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def same(self, a: T, b: T) -> bool:
        return self.find(a) == self.find(b)

    def classes(self) -> List[List[T]]:
        groups: Dict[T, List[T]] = {}
        for e in sorted(self.parent, key=self.order.__getitem__):
            groups.setdefault(self.find(e), []).append(e)
        return list(groups.values())
