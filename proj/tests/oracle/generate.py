"""Independent reference values frozen into test_oracle_values.cpp."""
import numpy as np
from scipy.integrate import quad


def poiseuille(y, H, G, mu, alpha):
    # Shear stress balance tau(s) = -G s; the fluid shears where |tau| > alpha.
    def shear_rate(s):
        t = G * abs(s)
        return (t - alpha) / mu if t > alpha else 0.0
    val, _ = quad(shear_rate, abs(y), H, limit=200)
    return val


def stream_velocity(n, psi):
    h = 1.0 / n
    xs = np.arange(n + 1) * h
    ux = np.zeros((n, n + 1))
    uy = np.zeros((n + 1, n))
    for j in range(n):
        for i in range(n + 1):
            ux[j, i] = (psi(xs[i], xs[j + 1]) - psi(xs[i], xs[j])) / h
    for j in range(n + 1):
        for i in range(n):
            uy[j, i] = -(psi(xs[i + 1], xs[j]) - psi(xs[i], xs[j])) / h
    ux[:, 0] = ux[:, n] = 0
    uy[0, :] = uy[n, :] = 0
    return ux, uy


def transport_step(n, ux, uy, rho0, dt):
    h = 1.0 / n
    N = n * n
    M = np.eye(N)
    idx = lambda i, j: j * n + i
    for j in range(n):
        for i in range(n):
            P = idx(i, j)
            # inflow through each face (flux per unit area of the cell)
            faces = [(ux[j, i], (i - 1, j), +1), (ux[j, i + 1], (i + 1, j), -1),
                     (uy[j, i], (i, j - 1), +1), (uy[j + 1, i], (i, j + 1), -1)]
            for u, (a, b), sgn in faces:
                inflow = sgn * u
                if inflow > 0:
                    w = dt * inflow * h / (h * h)
                    M[P, P] += w
                    M[P, idx(a, b)] -= w
    return np.linalg.solve(M, rho0.ravel()).reshape(n, n)


def pressure(n, ux, uy, rho1, dt):
    h = 1.0 / n
    div = (ux[:, 1:] - ux[:, :-1]) / h + (uy[1:, :] - uy[:-1, :]) / h
    N = n * n
    L = np.zeros((N, N))
    idx = lambda i, j: j * n + i
    for j in range(n):
        for i in range(n):
            for a, b in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if 0 <= a < n and 0 <= b < n:
                    L[idx(i, j), idx(i, j)] -= 1 / h**2
                    L[idx(i, j), idx(a, b)] += 1 / h**2
    A = np.vstack([L, np.ones((1, N))])
    rhs = np.concatenate([(rho1 / dt) * div.ravel(), [0.0]])
    q = np.linalg.lstsq(A, rhs, rcond=None)[0]
    return q.reshape(n, n)


np.set_printoptions(precision=17)
print("poiseuille H=0.5 G=1 mu=0.1 alpha=0.25")
for y in (0.0, 0.1, 0.25, 0.3, 0.4, 0.45, -0.35):
    print(f"  {y}: {poiseuille(y, 0.5, 1.0, 0.1, 0.25)!r}")

n = 6
psi = lambda x, y: (np.sin(np.pi * x) * np.sin(np.pi * y)) ** 2 * (1 + x)
ux, uy = stream_velocity(n, psi)
xc = (np.arange(n) + 0.5) / n
X, Y = np.meshgrid(xc, xc)
rho0 = 1 + X * Y + 0.5 * (X > 0.5)
rho1 = transport_step(n, ux, uy, rho0, 0.1)
print("transport cells (i,j):", {(i, j): repr(rho1[j, i]) for (i, j) in ((0, 0), (2, 3), (5, 5), (3, 1))})
print("transport mass:", repr(rho1.sum() / n**2), repr(rho0.sum() / n**2))

xf = np.arange(n + 1) / n
uxs = np.array([[x * yc * (1 - yc) for x in xf] for yc in xc])
uys = np.array([[np.sin(np.pi * x) * yf for x in xc] for yf in xf])
uxs[:, 0] = uxs[:, n] = 0
uys[0, :] = uys[n, :] = 0
q = pressure(n, uxs, uys, 1.3, 0.05)
print("pressure cells:", {(i, j): repr(q[j, i]) for (i, j) in ((0, 0), (2, 3), (5, 5), (4, 1))})

dts = np.array([8e-3, 4e-3, 2e-3, 1e-3])
errs = np.array([3.1e-3, 1.7e-3, 8.0e-4, 4.3e-4])
print("order:", repr(np.polyfit(np.log(dts), np.log(errs), 1)[0]))
