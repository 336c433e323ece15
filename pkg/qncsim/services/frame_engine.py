"""
批量Pauli框架传播引擎

电路编译为操作元组序列后，以 (试验数, 14) 的布尔数组同时传播一批试验。
每个错误槽每个循环消耗一个均匀随机数，列序与槽编号一致。
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping, Optional, Tuple
import numpy as np
from qncsim.models.circuit import Circuit, StepKind
from qncsim.models.error_model import ErrorModel
from qncsim.models.pauli import NUM_QUBITS
from qncsim.services.error_models import Channel, resolve_channel, local_error_bits, cnot_error_bits

OP_H, OP_CNOT, OP_MZ, OP_MX, OP_IFX, OP_IFZ, OP_SLOT = range(7)

_OPCODES = {
    StepKind.HADAMARD: OP_H,
    StepKind.CNOT: OP_CNOT,
    StepKind.MEASURE_Z: OP_MZ,
    StepKind.MEASURE_X: OP_MX,
    StepKind.COND_X: OP_IFX,
    StepKind.COND_Z: OP_IFZ,
}

# 强制错误：槽编号 -> (x位, z位)，形状 (批量, 槽比特数) 或 (槽比特数,)
Faults = Mapping[int, Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class Program:
    """编译后的电路"""
    ops: Tuple[tuple, ...]
    channels: Tuple[Optional[Channel], ...]
    num_slots: int
    num_registers: int
    repetitions: int
    final_pairs: Tuple[Tuple[int, int], ...]

    @property
    def draws_per_trial(self) -> int:
        """每次试验消耗的均匀随机数个数"""
        return self.num_slots * self.repetitions

    @property
    def outcome_width(self) -> int:
        """每次试验的末态对个数（含各循环）"""
        return len(self.final_pairs) * self.repetitions


@dataclass
class BatchResult:
    """批量传播结果"""
    bells: np.ndarray
    flips: np.ndarray
    x: np.ndarray
    z: np.ndarray

    def outcome_codes(self) -> np.ndarray:
        """把各末态对的BellIndex按4进制编码为单个整数"""
        weights = 4 ** np.arange(self.bells.shape[1], dtype=np.int64)
        return self.bells.astype(np.int64) @ weights


@lru_cache(maxsize=64)
def compile_program(circuit: Circuit, model: ErrorModel) -> Program:
    """
    编译电路并按错误模型解析每个错误槽

    Args:
        circuit: 电路
        model: 错误模型

    Returns:
        Program: 可批量执行的程序
    """
    registers = {name: index for index, name in enumerate(circuit.registers)}
    ops = []
    channels = []
    for s in circuit.slices:
        for op in s.ops:
            qubits = tuple(int(q) for q in op.qubits)
            if op.is_slot:
                ops.append((OP_SLOT, len(channels), qubits))
                channels.append(resolve_channel(model, op.tag, op.qubits))
            elif op.kind is StepKind.CNOT:
                ops.append((OP_CNOT, qubits[0], qubits[1]))
            elif op.is_measurement:
                ops.append((_OPCODES[op.kind], qubits[0], registers[op.register]))
            elif op.kind in (StepKind.COND_X, StepKind.COND_Z):
                ops.append((_OPCODES[op.kind], qubits[0], [registers[r] for r in op.condition]))
            else:
                ops.append((OP_H, qubits[0]))
    return Program(
        ops=tuple(ops),
        channels=tuple(channels),
        num_slots=len(channels),
        num_registers=len(circuit.registers),
        repetitions=circuit.repetitions,
        final_pairs=tuple((int(a), int(b)) for a, b in circuit.final_pairs),
    )


def _apply_channel(x: np.ndarray, z: np.ndarray, channel: Channel, u: np.ndarray) -> None:
    kind, p, qubits = channel
    if kind == 'depolarize1':
        xb, zb = local_error_bits(u, p)
        x[:, qubits[0]] ^= xb
        z[:, qubits[0]] ^= zb
    elif kind == 'depolarize2':
        xa, za, xb, zb = cnot_error_bits(u, p)
        a, b = qubits
        x[:, a] ^= xa
        z[:, a] ^= za
        x[:, b] ^= xb
        z[:, b] ^= zb
    elif kind == 'flip_z':
        z[:, qubits[0]] ^= u < p
    else:
        x[:, qubits[0]] ^= u < p


def simulate(program: Program, size: int, uniforms: Optional[np.ndarray] = None,
             faults: Optional[Faults] = None) -> BatchResult:
    """
    批量传播Pauli框架

    Args:
        program: 编译后的程序
        size: 批量大小
        uniforms: 形状 (size, draws_per_trial) 的均匀随机数；None表示无随机错误
        faults: 强制错误，每个循环都会施加

    Returns:
        BatchResult: 各末态对的BellIndex、测量翻转与末态框架
    """
    faults = faults or {}
    num_regs = program.num_registers
    pairs = program.final_pairs
    x = np.zeros((size, NUM_QUBITS), dtype=bool)
    z = np.zeros((size, NUM_QUBITS), dtype=bool)
    flips = np.zeros((size, num_regs * program.repetitions), dtype=bool)
    bells = np.zeros((size, program.outcome_width), dtype=np.int8)

    for rep in range(program.repetitions):
        x[:] = False
        z[:] = False
        record = flips[:, rep * num_regs:(rep + 1) * num_regs]
        offset = rep * program.num_slots
        for op in program.ops:
            code = op[0]
            if code == OP_CNOT:
                _, c, t = op
                x[:, t] ^= x[:, c]
                z[:, c] ^= z[:, t]
            elif code == OP_SLOT:
                _, index, qubits = op
                if index in faults:
                    fx, fz = faults[index]
                    x[:, list(qubits)] ^= fx
                    z[:, list(qubits)] ^= fz
                channel = program.channels[index]
                if uniforms is not None and channel is not None:
                    _apply_channel(x, z, channel, uniforms[:, offset + index])
            elif code == OP_MZ or code == OP_MX:
                _, q, r = op
                record[:, r] = x[:, q] if code == OP_MZ else z[:, q]
                x[:, q] = False
                z[:, q] = False
            elif code == OP_IFX:
                _, q, regs = op
                x[:, q] ^= np.logical_xor.reduce(record[:, regs], axis=1)
            elif code == OP_IFZ:
                _, q, regs = op
                z[:, q] ^= np.logical_xor.reduce(record[:, regs], axis=1)
            else:
                q = op[1]
                swapped = x[:, q].copy()
                x[:, q] = z[:, q]
                z[:, q] = swapped
        for k, (a, b) in enumerate(pairs):
            column = rep * len(pairs) + k
            bells[:, column] = (x[:, a] ^ x[:, b]).astype(np.int8) + 2 * (z[:, a] ^ z[:, b]).astype(np.int8)
    return BatchResult(bells=bells, flips=flips, x=x, z=z)


def faults_from_rows(slot_qubits: Dict[int, int], rows: np.ndarray) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
    """
    把每行的单比特Pauli（Pauli值）转换为强制错误

    Args:
        slot_qubits: 槽编号 -> 错误所在比特在槽内的位置（0或1）
        rows: 形状 (N, 槽数) 的Pauli值数组，列序与 slot_qubits 的插入顺序一致
    """
    faults = {}
    for column, (index, position) in enumerate(slot_qubits.items()):
        codes = rows[:, column].astype(np.int64)
        fx = np.zeros((rows.shape[0], 2), dtype=bool)
        fz = np.zeros((rows.shape[0], 2), dtype=bool)
        fx[:, position] = (codes & 1).astype(bool)
        fz[:, position] = (codes >> 1).astype(bool)
        faults[index] = (fx, fz)
    return faults
