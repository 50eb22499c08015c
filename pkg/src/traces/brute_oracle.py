# src/traces/brute_oracle.py
"""
Независимый оракул для следов A(C_l^(r)): прямой перебор индексных кортежей
по определению следа через мультиорграфы, подсчёт эйлеровых контуров
по теореме BEST и матричной теореме о деревьях. Здесь же проверки
замкнутых формул для главных миноров лапласиана.
"""
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Dict, Generator, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from config import DEFAULT_JOBS, ENUMERATION_BUDGET
from src.linalg.exact_linalg import ExactMatrix, det_fraction_free
from src.utils.errors import ConsistencyError, FeasibilityError, ParameterError
from src.utils.validation import check_hypercycle

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]
Incidence = Tuple[int, int]  # (вершина-голова, номер ребра)


@dataclass(frozen=True)
class MultiDigraph:
    """
    Мультиорграф: вершины и мультимножество дуг с кратностями (>= 1)
    """

    vertices: Tuple[int, ...]
    arcs: Tuple[Tuple[Arc, int], ...]

    def __post_init__(self):
        known = set(self.vertices)
        for (u, v), multiplicity in self.arcs:
            if multiplicity < 1:
                raise ParameterError(f"Кратность дуги ({u}, {v}) должна быть положительной")
            if u not in known or v not in known:
                raise ParameterError(f"Дуга ({u}, {v}) выходит за множество вершин")

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc], vertices: Optional[Iterable[int]] = None) -> "MultiDigraph":
        counter = Counter(arcs)
        if vertices is None:
            vertices = {x for arc in counter for x in arc}
        return cls(tuple(sorted(set(vertices))), tuple(sorted(counter.items())))

    @property
    def arc_count(self) -> int:
        return sum(multiplicity for _, multiplicity in self.arcs)

    def out_degrees(self) -> Dict[int, int]:
        degrees = dict.fromkeys(self.vertices, 0)
        for (u, _), multiplicity in self.arcs:
            degrees[u] += multiplicity
        return degrees

    def in_degrees(self) -> Dict[int, int]:
        degrees = dict.fromkeys(self.vertices, 0)
        for (_, v), multiplicity in self.arcs:
            degrees[v] += multiplicity
        return degrees

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for (u, v), multiplicity in self.arcs:
            graph.add_edges_from([(u, v)] * multiplicity)
        return graph


@dataclass(frozen=True)
class IndexEntry:
    """Элемент i*alpha индексного кортежа: голова и (r-1)-кортеж спутников"""

    head: int
    tail: Tuple[int, ...]


@dataclass(frozen=True)
class IndexTuple:
    """Индексный кортеж F с неубывающими головами"""

    entries: Tuple[IndexEntry, ...]

    def is_well_formed(self, edges: Sequence[Sequence[int]]) -> bool:
        heads = [entry.head for entry in self.entries]
        if heads != sorted(heads):
            return False
        edge_sets = {frozenset(edge) for edge in edges}
        r = len(edges[0])
        for entry in self.entries:
            members = (entry.head,) + entry.tail
            if len(set(members)) != r or frozenset(members) not in edge_sets:
                return False
        return True

    def is_r_valent(self, r: int) -> bool:
        appearances = Counter()
        for entry in self.entries:
            appearances[entry.head] += 1
            appearances.update(entry.tail)
        return all(count % r == 0 for count in appearances.values())


def hypercycle_edges(r: int, l: int) -> List[Tuple[int, ...]]:
    """
    Рёбра C_l^(r): ребро i = (ядро i, добавленные вершины ребра i, ядро i+1 по модулю l).
    Ядра нумеруются 1..l, добавленные вершины - с l+1 подряд по рёбрам.

    Args:
        r: Равномерность
        l: Длина цикла

    Returns:
        Список из l рёбер по r вершин
    """
    check_hypercycle(r, l)
    edges = []
    for i in range(1, l + 1):
        added = tuple(l + (i - 1) * (r - 2) + t for t in range(1, r - 1))
        edges.append((i,) + added + (i % l + 1,))
    return edges


def digraph_of(F: IndexTuple) -> MultiDigraph:
    """
    Мультиорграф D(F): из каждой головы дуги ко всем её спутникам

    Args:
        F: Индексный кортеж

    Returns:
        MultiDigraph на множестве индексов, встречающихся в F
    """
    arcs = [(entry.head, v) for entry in F.entries for v in entry.tail]
    vertices = {entry.head for entry in F.entries} | {v for entry in F.entries for v in entry.tail}
    return MultiDigraph.from_arcs(arcs, vertices)


def laplacian_minor(D: MultiDigraph, root: Optional[int] = None) -> ExactMatrix:
    """
    Главный минор лапласиана L(D) = Deg^+(D) - A(D) без строки и столбца root

    Args:
        D: Мультиорграф
        root: Удаляемая вершина (по умолчанию первая)

    Returns:
        Целочисленная матрица (n-1) x (n-1)
    """
    root = D.vertices[0] if root is None else root
    order = [v for v in D.vertices if v != root]
    position = {v: k for k, v in enumerate(order)}
    rows = [[0] * len(order) for _ in order]
    for (u, v), multiplicity in D.arcs:
        if u == root:
            continue
        rows[position[u]][position[u]] += multiplicity
        if v != root:
            rows[position[u]][position[v]] -= multiplicity
    return ExactMatrix.from_rows(rows) if order else ExactMatrix(0, 0)


def count_eulerian_circuits(D: MultiDigraph) -> int:
    """
    Число эйлеровых контуров (кратные дуги различаются) по теореме BEST:
    tau(D) * prod (d^+(v) - 1)!

    Args:
        D: Мультиорграф

    Returns:
        0, если D несвязен или не сбалансирован; иначе число контуров
    """
    if not D.arcs:
        return 0
    out_degrees = D.out_degrees()
    in_degrees = D.in_degrees()
    if any(out_degrees[v] != in_degrees[v] for v in D.vertices):
        return 0

    graph = D.to_networkx()
    graph.remove_nodes_from([v for v in D.vertices if out_degrees[v] == 0])
    if not nx.is_weakly_connected(graph):
        return 0

    active = MultiDigraph(tuple(graph.nodes), D.arcs)
    tau = det_fraction_free(laplacian_minor(active))
    return int(tau) * prod(factorial(out_degrees[v] - 1) for v in active.vertices)


def weak_compositions(n: int, k: int) -> Generator[Tuple[int, ...], None, None]:
    """Все упорядоченные наборы из k неотрицательных чисел с суммой n"""
    if k == 0:
        if n == 0:
            yield ()
    elif k == 1:
        yield (n,)
    else:
        for first in range(n + 1):
            for rest in weak_compositions(n - first, k - 1):
                yield (first,) + rest


def _incidences(r: int, l: int) -> List[Tuple[Incidence, Tuple[int, ...]]]:
    # пары (голова, ребро) в порядке голов и спутники головы в этом ребре
    edges = hypercycle_edges(r, l)
    items = []
    for index, edge in enumerate(edges):
        for v in edge:
            items.append(((v, index), tuple(u for u in edge if u != v)))
    items.sort(key=lambda item: item[0])
    return items


def enumeration_size(r: int, l: int, order: int) -> int:
    """Число групп (мультимножеств пар голова-ребро), которые перебирает оракул"""
    check_hypercycle(r, l)
    incidences = l * r
    return comb(order + incidences - 1, incidences - 1)


@dataclass(frozen=True)
class TraceTerm:
    """Одна группа индексных кортежей с общим мультиорграфом"""

    digraph: MultiDigraph
    tuple_count: int
    c_value: int


def digraph_trace_terms(r: int, l: int, order: int, first: Optional[int] = None
                        ) -> Generator[TraceTerm, None, None]:
    """
    Перебирает r-валентные группы индексных кортежей длины order.

    Группа задаётся числом c_{v,e} вхождений каждой пары (голова v, ребро e).
    Кортежей в группе prod_v k_v!/prod_e c_{v,e}! * ((r-1)!)^order:
    порядок элементов с общей головой и перестановки спутников.

    Args:
        r: Равномерность
        l: Длина цикла
        order: Длина кортежа
        first: Если задано, фиксирует число вхождений первой пары (для распараллеливания)
    """
    incidences = _incidences(r, l)
    count = len(incidences)
    permutations = factorial(r - 1) ** order

    if first is None:
        counts_iter = weak_compositions(order, count)
    else:
        counts_iter = ((first,) + rest for rest in weak_compositions(order - first, count - 1))

    for counts in counts_iter:
        heads: Counter = Counter()
        appearances: Counter = Counter()
        arcs: Counter = Counter()
        for ((v, _), tail), c in zip(incidences, counts):
            if not c:
                continue
            heads[v] += c
            appearances[v] += c
            for u in tail:
                appearances[u] += c
                arcs[(v, u)] += c
        if any(value % r for value in appearances.values()):
            continue

        same_head = prod(factorial(k) for k in heads.values())
        repeated = prod(factorial(c) for c in counts)
        c_value = prod(factorial(k * (r - 1)) for k in heads.values())
        digraph = MultiDigraph(tuple(sorted(appearances)), tuple(sorted(arcs.items())))
        yield TraceTerm(digraph, same_head // repeated * permutations, c_value)


def _partial_trace(args: Tuple[int, int, int, Optional[int]]) -> Fraction:
    r, l, order, first = args
    pi_f = Fraction(1, factorial(r - 1) ** order)
    arc_total = order * (r - 1)
    total = Fraction(0)
    for term in digraph_trace_terms(r, l, order, first):
        circuits = count_eulerian_circuits(term.digraph)
        if circuits:
            total += Fraction(term.tuple_count * circuits * arc_total, term.c_value) * pi_f
    return total


def brute_trace(r: int, l: int, order: int, budget: int = ENUMERATION_BUDGET,
                jobs: int = DEFAULT_JOBS, progress: bool = False) -> Fraction:
    """
    Tr_order(A(C_l^(r))) прямо по определению через мультиорграфы:
    (r-1)^{n-1} * sum_F |E(F)| * |Eul(F)| * pi_F / c(F)

    Args:
        r: Равномерность
        l: Длина цикла
        order: Порядок следа
        budget: Предел числа перебираемых групп
        jobs: Число процессов (результат от него не зависит)
        progress: Показывать прогресс в stderr

    Returns:
        Точное значение следа (целое, в виде Fraction)
    """
    check_hypercycle(r, l)
    if order < 1:
        raise ParameterError(f"Порядок следа должен быть положительным: {order}")
    estimate = enumeration_size(r, l, order)
    if estimate > budget:
        raise FeasibilityError(
            f"Перебор для r={r}, l={l}, порядка {order}: {estimate} групп больше бюджета {budget}",
            estimate=estimate,
        )
    logger.info("Перебор следа порядка %d для C_%d^(%d): %d групп", order, l, r, estimate)

    chunks = [(r, l, order, first) for first in range(order + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(tqdm(pool.map(_partial_trace, chunks), total=len(chunks),
                                 disable=not progress, desc="trace"))
    else:
        partials = [_partial_trace(chunk) for chunk in tqdm(chunks, disable=not progress, desc="trace")]

    n = l * (r - 1)
    total = (r - 1) ** (n - 1) * sum(partials, Fraction(0))
    if total.denominator != 1:
        raise ConsistencyError(f"След порядка {order} получился нецелым: {total}")
    return total


def _fill_symmetric(rows: List[List[int]], members: Sequence[int], weight: int, r: int) -> None:
    # каждая вершина ребра - голова weight раз: диагональ weight*(r-1), вне диагонали -weight
    for u in members:
        rows[u][u] += weight * (r - 1)
        for v in members:
            if v != u:
                rows[u][v] -= weight


def p_block_matrix(r: int, a: Sequence[int]) -> ExactMatrix:
    """
    Минор p_s для гиперпути из s рёбер с кратностями a_1..a_s:
    блоки a_i*A_{r-2}, столбцы -a_i*J, диагональ x_i = (a_i+a_{i+1})(r-1),
    последний блок a_s*A_{r-1}. Порядок s(r-1).
    """
    s = len(a)
    size = s * (r - 1)
    rows = [[0] * size for _ in range(size)]
    position = 0
    previous_shared: Optional[int] = None
    for i in range(s):
        internals = list(range(position, position + r - 2))
        position += r - 2
        shared = position
        position += 1
        members = internals + ([previous_shared] if previous_shared is not None else []) + [shared]
        _fill_symmetric(rows, members, a[i], r)
        previous_shared = shared
    return ExactMatrix.from_rows(rows)


def c_block_matrix(r: int, a: Sequence[int]) -> ExactMatrix:
    """
    Минор c_l для самого гиперцикла, когда каждая вершина ребра i
    является головой a_i раз. Удалена общая вершина рёбер l и 1. Порядок l(r-1)-1.
    """
    l = len(a)
    size = l * (r - 1) - 1
    rows = [[0] * size for _ in range(size)]
    position = 0
    previous_shared: Optional[int] = None
    for i in range(l):
        internals = list(range(position, position + r - 2))
        position += r - 2
        members = internals + ([previous_shared] if previous_shared is not None else [])
        if i < l - 1:
            shared = position
            position += 1
            members.append(shared)
            previous_shared = shared
        _fill_symmetric(rows, members, a[i], r)
    return ExactMatrix.from_rows(rows)


def cprime_block_matrix(r: int, l: int, a: int) -> ExactMatrix:
    """
    Минор c'_l: общая вершина рёбер i-1 и i - голова 2a раз в ребре i,
    внутренние вершины - a раз. Диагональ общих вершин y = 2(r-1) (с множителем a).
    Порядок (r-1)l-1.
    """
    size = l * (r - 1) - 1
    rows = [[0] * size for _ in range(size)]
    position = 0
    previous_shared: Optional[int] = None
    for i in range(l):
        internals = list(range(position, position + r - 2))
        position += r - 2
        shared: Optional[int] = None
        if i < l - 1:
            shared = position
            position += 1
        members = internals + [v for v in (previous_shared, shared) if v is not None]
        heads = [(v, a) for v in internals]
        if previous_shared is not None:
            heads.append((previous_shared, 2 * a))
        for u, weight in heads:
            rows[u][u] += weight * (r - 1)
            for v in members:
                if v != u:
                    rows[u][v] -= weight
        previous_shared = shared
    return ExactMatrix.from_rows(rows)


def minor_closed_form(kind: str, r: int, params: Sequence[int]) -> Fraction:
    """
    Замкнутые формулы:
    p_s = r^{s(r-2)} prod a_i^{r-1};
    c_l = 2 r^{l(r-2)-1} prod a_i^{r-1} sum 1/a_i;
    c'_l = 2^l r^{l(r-2)-1} a^{(r-1)l-1}  (params = (l, a))
    """
    if kind == "p":
        s = len(params)
        return Fraction(r ** (s * (r - 2)) * prod(x ** (r - 1) for x in params))
    if kind == "c":
        l = len(params)
        return (2 * r ** (l * (r - 2) - 1) * prod(x ** (r - 1) for x in params)
                * sum(Fraction(1, x) for x in params))
    if kind == "cprime":
        l, a = params
        return Fraction(2 ** l * r ** (l * (r - 2) - 1) * a ** ((r - 1) * l - 1))
    raise ParameterError(f"Неизвестный вид минора: {kind}")


def build_minor_matrix(kind: str, r: int, params: Sequence[int]) -> ExactMatrix:
    """
    Строит блочную матрицу минора нужного вида

    Args:
        kind: 'p', 'c' или 'cprime'
        r: Равномерность (>= 3)
        params: для p - (a_1..a_s), s >= 1; для c - (a_1..a_l), l >= 3; для cprime - (l, a)
    """
    if r < 3:
        raise ParameterError(f"Равномерность r должна быть не меньше 3: {r}")
    if kind == "p":
        if len(params) < 1 or any(x < 1 for x in params):
            raise ParameterError(f"Для p нужны положительные a_1..a_s: {params}")
        return p_block_matrix(r, params)
    if kind == "c":
        if len(params) < 3 or any(x < 1 for x in params):
            raise ParameterError(f"Для c нужны l >= 3 положительных a_i: {params}")
        return c_block_matrix(r, params)
    if kind == "cprime":
        if len(params) != 2 or params[0] < 3 or params[1] < 1:
            raise ParameterError(f"Для cprime нужны (l >= 3, a >= 1): {params}")
        return cprime_block_matrix(r, params[0], params[1])
    raise ParameterError(f"Неизвестный вид минора: {kind}")


def minor_determinant_check(kind: str, r: int, params: Sequence[int]) -> bool:
    """
    Сравнивает определитель блочной матрицы с замкнутой формулой (точно)

    Returns:
        True, если совпадают
    """
    matrix = build_minor_matrix(kind, r, params)
    determinant = det_fraction_free(matrix)
    expected = minor_closed_form(kind, r, params)
    if determinant != expected:
        logger.warning("Минор %s при r=%d, %s: det=%s, формула=%s", kind, r, params, determinant, expected)
    return determinant == expected
