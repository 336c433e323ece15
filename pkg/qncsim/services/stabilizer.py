"""
CHP稳定子表（Aaronson-Gottesman），行以整数位掩码保存

第 0..n-1 行为去稳定子，第 n..2n-1 行为稳定子，第 2n 行为测量暂存行。
"""
from typing import List, Optional, Tuple
from qncsim.models.pauli import NUM_QUBITS, PauliFrame, Pauli


def _popcount(value: int) -> int:
    return bin(value).count('1')


class StabilizerTableau:
    """n比特稳定子表，初态 |0...0>"""

    def __init__(self, n: int = NUM_QUBITS):
        self.n = n
        rows = 2 * n + 1
        self.xs: List[int] = [0] * rows
        self.zs: List[int] = [0] * rows
        self.rs: List[int] = [0] * rows
        for i in range(n):
            self.xs[i] = 1 << i
            self.zs[n + i] = 1 << i

    def copy(self) -> 'StabilizerTableau':
        clone = StabilizerTableau.__new__(StabilizerTableau)
        clone.n = self.n
        clone.xs = list(self.xs)
        clone.zs = list(self.zs)
        clone.rs = list(self.rs)
        return clone

    # ---- Clifford门 ----

    def h(self, a: int) -> None:
        bit = 1 << a
        for i in range(2 * self.n):
            x, z = self.xs[i] & bit, self.zs[i] & bit
            if x and z:
                self.rs[i] ^= 1
            if bool(x) != bool(z):
                self.xs[i] ^= bit
                self.zs[i] ^= bit

    def cnot(self, a: int, b: int) -> None:
        for i in range(2 * self.n):
            xa = (self.xs[i] >> a) & 1
            zb = (self.zs[i] >> b) & 1
            xb = (self.xs[i] >> b) & 1
            za = (self.zs[i] >> a) & 1
            if xa and zb and (xb ^ za ^ 1):
                self.rs[i] ^= 1
            if xa:
                self.xs[i] ^= 1 << b
            if zb:
                self.zs[i] ^= 1 << a

    def x(self, a: int) -> None:
        for i in range(2 * self.n):
            self.rs[i] ^= (self.zs[i] >> a) & 1

    def z(self, a: int) -> None:
        for i in range(2 * self.n):
            self.rs[i] ^= (self.xs[i] >> a) & 1

    def y(self, a: int) -> None:
        for i in range(2 * self.n):
            self.rs[i] ^= ((self.xs[i] ^ self.zs[i]) >> a) & 1

    def apply_pauli(self, a: int, pauli: Pauli) -> None:
        if pauli is Pauli.X:
            self.x(a)
        elif pauli is Pauli.Z:
            self.z(a)
        elif pauli is Pauli.Y:
            self.y(a)

    # ---- 测量 ----

    def _rowsum(self, h: int, i: int) -> None:
        """第h行 <- 第i行 * 第h行"""
        x1, z1, x2, z2 = self.xs[i], self.zs[i], self.xs[h], self.zs[h]
        ox1, oy1, oz1 = x1 & ~z1, x1 & z1, z1 & ~x1
        ox2, oy2, oz2 = x2 & ~z2, x2 & z2, z2 & ~x2
        plus = (ox1 & oy2) | (oy1 & oz2) | (oz1 & ox2)
        minus = (ox1 & oz2) | (oy1 & ox2) | (oz1 & oy2)
        phase = (2 * self.rs[h] + 2 * self.rs[i] + _popcount(plus) - _popcount(minus)) % 4
        self.rs[h] = phase >> 1
        self.xs[h] = x1 ^ x2
        self.zs[h] = z1 ^ z2

    def is_random_z(self, a: int) -> bool:
        """Z基测量结果是否随机（存在与Z_a反对易的稳定子）"""
        return any((self.xs[i] >> a) & 1 for i in range(self.n, 2 * self.n))

    def measure_z(self, a: int, forced: int = 0) -> Tuple[int, bool]:
        """
        Z基测量

        Args:
            a: 比特
            forced: 结果随机时采用的结果

        Returns:
            (测量结果, 是否随机)
        """
        n = self.n
        p = next((i for i in range(n, 2 * n) if (self.xs[i] >> a) & 1), None)
        if p is not None:
            for i in range(2 * n):
                if i != p and (self.xs[i] >> a) & 1:
                    self._rowsum(i, p)
            self.xs[p - n], self.zs[p - n], self.rs[p - n] = self.xs[p], self.zs[p], self.rs[p]
            self.xs[p], self.zs[p], self.rs[p] = 0, 1 << a, forced & 1
            return forced & 1, True
        scratch = 2 * n
        self.xs[scratch], self.zs[scratch], self.rs[scratch] = 0, 0, 0
        for i in range(n):
            if (self.xs[i] >> a) & 1:
                self._rowsum(scratch, i + n)
        return self.rs[scratch], False

    def bell_measure(self, a: int, b: int) -> Optional[Tuple[int, int]]:
        """
        Bell测量，返回 (X宇称, Z宇称)；若该对不处于Bell态则返回None
        """
        self.cnot(a, b)
        self.h(a)
        z_sign, random_a = self.measure_z(a)
        x_sign, random_b = self.measure_z(b)
        if random_a or random_b:
            return None
        return x_sign, z_sign

    # ---- 稳定子查询 ----

    def stabilizers(self) -> List[Tuple[int, int]]:
        return [(self.xs[i], self.zs[i]) for i in range(self.n, 2 * self.n)]

    def commutes_with_stabilizers(self, frame: PauliFrame) -> bool:
        """框架与所有稳定子对易，即该Pauli作用后态不变"""
        for xs, zs in self.stabilizers():
            if (_popcount(frame.x_bits & zs) + _popcount(frame.z_bits & xs)) & 1:
                return False
        return True
