"""
电路的文本与JSON序列化

文本格式：
    # circuit: qnc
    # repetitions: 1
    # final: A F; B E
    # idle: slice
    1| CNOT A C; ERR gate A C; CNOT E G; ERR gate E G
    1| ERR gate C; MZ C -> c; ...
    5| IFZ J : l n; ERR gate J
其余 # 行为注释。
"""
import json
from typing import Any, Dict, List, Tuple
from qncsim.models.circuit import Circuit, GateStep, Slice, SlotTag, StepKind, IDLE_SCHEDULES
from qncsim.models.pauli import QubitId
from qncsim.services.circuit import validate_circuit
from qncsim.utils.errors import InvalidCircuitError

_HEADER_KEYS = ('circuit', 'repetitions', 'final', 'idle')


def _format_op(op: GateStep) -> str:
    names = ' '.join(q.name for q in op.qubits)
    if op.is_slot:
        return f"ERR {op.tag.value} {names}"
    if op.is_measurement:
        return f"{op.kind.value} {names} -> {op.register}"
    if op.condition:
        return f"{op.kind.value} {names} : {' '.join(op.condition)}"
    return f"{op.kind.value} {names}"


def dump_text(circuit: Circuit) -> str:
    """电路的文本形式"""
    lines = [
        f"# circuit: {circuit.name}",
        f"# repetitions: {circuit.repetitions}",
        f"# final: {'; '.join(a.name + ' ' + b.name for a, b in circuit.final_pairs)}",
        f"# idle: {circuit.idle_schedule}",
        f"# measurements_per_cycle: {circuit.measurement_count}",
        f"# error_slots_per_cycle: {len(circuit.error_slots())}",
    ]
    for s in circuit.slices:
        lines.append(f"{s.step}| " + '; '.join(_format_op(op) for op in s.ops))
    return '\n'.join(lines) + '\n'


def _qubits(tokens: List[str]) -> Tuple[QubitId, ...]:
    return tuple(QubitId.parse(token) for token in tokens)


def _parse_op(text: str) -> GateStep:
    tokens = text.split()
    if not tokens:
        raise InvalidCircuitError("empty operation")
    kind = StepKind(tokens[0])
    if kind is StepKind.ERROR_SLOT:
        return GateStep.slot(SlotTag(tokens[1]), *_qubits(tokens[2:]))
    if kind in (StepKind.MEASURE_Z, StepKind.MEASURE_X):
        if len(tokens) != 4 or tokens[2] != '->':
            raise InvalidCircuitError(f"measurement needs 'q -> register': {text!r}")
        return GateStep(kind, _qubits(tokens[1:2]), register=tokens[3])
    if kind in (StepKind.COND_X, StepKind.COND_Z):
        if ':' not in tokens:
            raise InvalidCircuitError(f"correction needs ': registers': {text!r}")
        split = tokens.index(':')
        return GateStep(kind, _qubits(tokens[1:split]), condition=tuple(tokens[split + 1:]))
    return GateStep(kind, _qubits(tokens[1:]))


def _build(name: str, slices: List[Slice], final_pairs, repetitions: int, idle_schedule: str) -> Circuit:
    if idle_schedule not in IDLE_SCHEDULES:
        raise InvalidCircuitError(f"unknown idle schedule {idle_schedule!r}")
    registers = tuple(op.register for s in slices for op in s.ops if op.is_measurement)
    circuit = Circuit(
        name=name,
        slices=tuple(slices),
        registers=registers,
        final_pairs=tuple(final_pairs),
        repetitions=repetitions,
        idle_schedule=idle_schedule,
    )
    validate_circuit(circuit)
    return circuit


def parse_text(text: str) -> Circuit:
    """
    解析文本形式

    Raises:
        InvalidCircuitError: 格式错误或电路不满足结构不变量
    """
    header: Dict[str, str] = {}
    slices = []
    try:
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith('#'):
                key, _, value = line[1:].partition(':')
                if key.strip() in _HEADER_KEYS:
                    header[key.strip()] = value.strip()
                continue
            step, bar, body = line.partition('|')
            if not bar:
                raise InvalidCircuitError(f"line {number}: missing '|'")
            ops = tuple(_parse_op(part) for part in body.split(';') if part.strip())
            slices.append(Slice(int(step), ops))
        final = []
        for pair in filter(None, (p.strip() for p in header.get('final', '').split(';'))):
            a, b = pair.split()
            final.append((QubitId.parse(a), QubitId.parse(b)))
        return _build(
            header.get('circuit', 'circuit'),
            slices,
            final,
            int(header.get('repetitions', 1)),
            header.get('idle', 'slice'),
        )
    except (ValueError, KeyError, IndexError) as e:
        raise InvalidCircuitError(f"cannot parse circuit text: {e}")


def to_dict(circuit: Circuit) -> Dict[str, Any]:
    """电路的字典形式，附带错误槽清单"""
    return {
        'name': circuit.name,
        'repetitions': circuit.repetitions,
        'idle_schedule': circuit.idle_schedule,
        'final_pairs': [[a.name, b.name] for a, b in circuit.final_pairs],
        'registers': list(circuit.registers),
        'measurements_per_cycle': circuit.measurement_count,
        'slices': [{'step': s.step, 'ops': [op.to_dict() for op in s.ops]} for s in circuit.slices],
        'error_slots': [
            {'index': index, 'slice': position, 'tag': op.tag.value, 'qubits': [q.name for q in op.qubits]}
            for index, (position, op) in enumerate(circuit.error_slots())
        ],
    }


def dump_json(circuit: Circuit) -> str:
    return json.dumps(to_dict(circuit), indent=2) + '\n'


def parse_json(text: str) -> Circuit:
    """解析JSON形式，忽略派生字段"""
    try:
        data = json.loads(text)
        slices = [
            Slice(int(item['step']), tuple(GateStep.from_dict(op) for op in item['ops']))
            for item in data['slices']
        ]
        final = [(QubitId.parse(a), QubitId.parse(b)) for a, b in data.get('final_pairs', [])]
        return _build(
            data.get('name', 'circuit'),
            slices,
            final,
            int(data.get('repetitions', 1)),
            data.get('idle_schedule', 'slice'),
        )
    except (ValueError, KeyError, TypeError) as e:
        raise InvalidCircuitError(f"cannot parse circuit JSON: {e}")
