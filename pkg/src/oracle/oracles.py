"""
Implementaciones de referencia deliberadamente simples.

Solo usan bucles de Python y `math`; no llaman a ninguna función de
`tensor_core` ni de `ldrld` (solo reutilizan sus tipos de datos). Son la
verdad de referencia de las pruebas y de `losscheck`.
"""
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ldrld.ranking_mask import TopSplit


def _lista(x) -> List[float]:
    return [float(v) for v in np.asarray(x, dtype=np.float64).reshape(-1)]


def oracle_matmul(a, b) -> List[List[float]]:
    """Triple bucle explícito."""
    a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    m, k = a.shape
    k2, n = b.shape
    if k != k2:
        raise ValueError(f"Dimensiones internas distintas: {k} y {k2}")
    salida = [[0.0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            acumulado = 0.0
            for r in range(k):
                acumulado += float(a[i, r]) * float(b[r, j])
            salida[i][j] = acumulado
    return salida


def oracle_rank_selection_sort(z) -> List[int]:
    """Ordenamiento por selección: en cada paso el mayor; en empate, el índice menor."""
    valores = _lista(z)
    restantes = list(range(len(valores)))
    orden = []
    while restantes:
        mejor = restantes[0]
        for idx in restantes[1:]:
            if valores[idx] > valores[mejor]:
                mejor = idx
        orden.append(mejor)
        restantes.remove(mejor)
    return orden


def oracle_topd_recursive(z_t, z_s, d: int) -> TopSplit:
    """
    Bucle literal de extracción: toma el máximo del estudiante entre las
    clases no excluidas, lo agrega a ambas secuencias y lo excluye; repite.
    """
    zt, zs = _lista(z_t), _lista(z_s)
    if not 2 <= d <= len(zs):
        raise ValueError(f"d={d} fuera de rango para C={len(zs)}")
    excluidas = set()
    extraidas = []
    for _ in range(len(zs)):
        mejor = None
        for idx in range(len(zs)):
            if idx in excluidas:
                continue
            if mejor is None or zs[idx] > zs[mejor]:
                mejor = idx
        extraidas.append(mejor)
        excluidas.add(mejor)
    top, rest = extraidas[:d], extraidas[d:]
    return TopSplit(
        top_t=np.array([zt[i] for i in top]),
        top_s=np.array([zs[i] for i in top]),
        rest_t=np.array([zt[i] for i in rest]),
        rest_s=np.array([zs[i] for i in rest]),
        d=d,
    )


def oracle_softmax(valores: Sequence[float], tau: float) -> List[float]:
    escalados = [v / tau for v in valores]
    maximo = max(escalados)
    exps = [math.exp(v - maximo) for v in escalados]
    total = sum(exps)
    return [e / total for e in exps]


def oracle_kl(p: Sequence[float], q: Sequence[float]) -> float:
    return sum(a * math.log(a / b) for a, b in zip(p, q) if a > 0)


def oracle_softmax_kl(t, s, tau: float) -> float:
    return oracle_kl(oracle_softmax(_lista(t), tau), oracle_softmax(_lista(s), tau))


def oracle_pair_loss(
    top_t, top_s, tau: float,
    epsilon: float = 1.5, delta: float = 2.0, lambda_: float = 0.05,
    adw_enabled: bool = True,
) -> float:
    """Recorre todos los pares i < j construyendo cada softmax de dos elementos."""
    zt, zs = _lista(top_t), _lista(top_s)
    d = len(zs)
    total = 0.0
    for i in range(d - 1):
        for j in range(i + 1, d):
            peso = 1.0
            if adw_enabled:
                ri, rj = i + 1, j + 1
                peso = (1.0 / (abs(rj - ri) + epsilon)) * delta * math.exp(-lambda_ * (ri + rj))
            den_t = math.exp(zt[i] / tau) + math.exp(zt[j] / tau)
            den_s = math.exp(zs[i] / tau) + math.exp(zs[j] / tau)
            pt = [math.exp(zt[i] / tau) / den_t, math.exp(zt[j] / tau) / den_t]
            ps = [math.exp(zs[i] / tau) / den_s, math.exp(zs[j] / tau) / den_s]
            total += peso * oracle_kl(pt, ps)
    return total


def oracle_ldrld_terms(z_t, z_s, label: int, cfg, order: Optional[Sequence[int]] = None) -> Dict[str, float]:
    """Evalúa cada término del objetivo por separado para una muestra."""
    zt, zs = _lista(z_t), _lista(z_s)
    num_classes = len(zs)
    if not 0 <= label < num_classes:
        raise ValueError(f"Etiqueta {label} fuera de rango para C={num_classes}")
    if cfg.d > num_classes:
        raise ValueError(f"d={cfg.d} > C={num_classes}")
    escala = cfg.tau ** 2 if cfg.tau_square_scaling else 1.0

    maximo = max(zs)
    task = maximo + math.log(sum(math.exp(v - maximo) for v in zs)) - zs[label]
    terminos = {"task": task, "weighted_pairs": 0.0, "llki": 0.0, "rntk": 0.0, "kd": 0.0}

    if cfg.mode == "kd":
        terminos["kd"] = escala * oracle_softmax_kl(zt, zs, cfg.tau)
        terminos["total"] = task + cfg.gamma * terminos["kd"]
        return terminos

    if order is None:
        order = oracle_rank_selection_sort(zs if cfg.rank_source == "student" else zt)
    top, rest = list(order[:cfg.d]), list(order[cfg.d:])
    top_t, top_s = [zt[i] for i in top], [zs[i] for i in top]

    if cfg.use_pairs:
        terminos["weighted_pairs"] = escala * oracle_pair_loss(
            top_t, top_s, cfg.tau,
            cfg.adw.epsilon, cfg.adw.delta, cfg.adw.lambda_, cfg.adw_enabled,
        )
    if cfg.use_llki:
        terminos["llki"] = escala * oracle_softmax_kl(top_t, top_s, cfg.tau)
    if cfg.use_rntk and len(rest) >= 2:
        terminos["rntk"] = escala * oracle_softmax_kl([zt[i] for i in rest], [zs[i] for i in rest], cfg.tau)

    terminos["total"] = (
        task
        + cfg.alpha * (terminos["weighted_pairs"] + terminos["llki"])
        + cfg.beta * terminos["rntk"]
    )
    return terminos


def oracle_ldrld(z_t, z_s, label: int, cfg, order: Optional[Sequence[int]] = None) -> float:
    return oracle_ldrld_terms(z_t, z_s, label, cfg, order)["total"]


def fd_gradient(f: Callable[[np.ndarray], float], x, h: float = 1e-5) -> np.ndarray:
    """
    Gradiente por diferencias centrales, coordenada por coordenada.

    Raises:
        ArithmeticError: Si f no es finita en algún punto evaluado.
    """
    base = np.array(x, dtype=np.float64)
    grad = np.zeros_like(base)
    plano = base.reshape(-1)
    for k in range(plano.size):
        mas, menos = plano.copy(), plano.copy()
        mas[k] += h
        menos[k] -= h
        f_mas = float(f(mas.reshape(base.shape)))
        f_menos = float(f(menos.reshape(base.shape)))
        if not (math.isfinite(f_mas) and math.isfinite(f_menos)):
            raise ArithmeticError(f"f no es finita cerca de la coordenada {k}")
        grad.reshape(-1)[k] = (f_mas - f_menos) / (2 * h)
    return grad
