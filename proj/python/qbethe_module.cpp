#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbethe/kernels.hpp"
#include "qbethe/sampling.hpp"
#include "qbethe/scalar_product.hpp"

namespace py = pybind11;
using namespace qbethe;

namespace {

Scalar S(const std::string& text) { return Scalar::from_string(text); }

std::vector<Scalar> SV(const std::vector<std::string>& texts) {
    std::vector<Scalar> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(S(t));
    return out;
}

ChainSpec chain_of(const std::string& q, const std::vector<std::string>& xi) {
    return ChainSpec(S(q), SV(xi));
}

py::dict vector_dict(const StateVector& v) {
    py::dict entries;
    for (const auto& [idx, val] : v.entries())
        entries[py::str(std::to_string(idx))] = val.str();
    py::dict d;
    d["legs"] = v.shape().legs;
    d["entries"] = entries;
    return d;
}

} // namespace

PYBIND11_MODULE(_qbethe, m) {
    m.doc() = "Exact scalar products of nested Bethe vectors for the q-deformed gl3 chain. "
              "All scalars cross the boundary as exact 'num/den' strings.";

    py::register_exception<Error>(m, "QBetheError");

    m.def(
        "check_yang_baxter",
        [](const std::string& q, const std::string& u, const std::string& v,
           const std::string& w) { return check_yang_baxter(S(q), S(u), S(v), S(w)).str(); },
        py::arg("q"), py::arg("u"), py::arg("v"), py::arg("w"),
        "Max residual entry of the Yang-Baxter equation; '0' on success.");

    m.def(
        "check_rtt",
        [](const std::string& q, const std::vector<std::string>& xi, const std::string& u,
           const std::string& v) { return check_rtt(chain_of(q, xi), S(u), S(v)).str(); },
        py::arg("q"), py::arg("xi"), py::arg("u"), py::arg("v"));

    m.def(
        "bethe_vector",
        [](const std::string& q, const std::vector<std::string>& xi,
           const std::vector<std::string>& t, const std::vector<std::string>& s) {
            BetheParams p{SV(t), SV(s)};
            return vector_dict(bethe_vector(chain_of(q, xi), p));
        },
        py::arg("q"), py::arg("xi"), py::arg("t"), py::arg("s"),
        "Off-shell Bethe vector as {'legs': N, 'entries': {index: 'num/den'}}.");

    m.def(
        "dual_bethe_vector",
        [](const std::string& q, const std::vector<std::string>& xi,
           const std::vector<std::string>& tau, const std::vector<std::string>& sigma) {
            BetheParams p{SV(tau), SV(sigma)};
            return vector_dict(dual_bethe_vector(chain_of(q, xi), p));
        },
        py::arg("q"), py::arg("xi"), py::arg("tau"), py::arg("sigma"));

    m.def(
        "direct_scalar_product",
        [](const std::string& q, const std::vector<std::string>& xi,
           const std::vector<std::string>& tau, const std::vector<std::string>& sigma,
           const std::vector<std::string>& t, const std::vector<std::string>& s) {
            BetheParams left{SV(tau), SV(sigma)}, right{SV(t), SV(s)};
            return direct_scalar_product(chain_of(q, xi), left, right).str();
        },
        py::arg("q"), py::arg("xi"), py::arg("tau"), py::arg("sigma"), py::arg("t"),
        py::arg("s"));

    m.def(
        "kernel_scalar_product",
        [](const std::string& q, const std::vector<std::string>& xi,
           const std::vector<std::string>& tau, const std::vector<std::string>& sigma,
           const std::vector<std::string>& t, const std::vector<std::string>& s) {
            BetheParams left{SV(tau), SV(sigma)}, right{SV(t), SV(s)};
            return scalar_product_kernel(chain_of(q, xi), left, right).str();
        },
        py::arg("q"), py::arg("xi"), py::arg("tau"), py::arg("sigma"), py::arg("t"),
        py::arg("s"), "Iterated-residue evaluation of the integral formula.");

    m.def(
        "compare_scalar_products",
        [](const std::string& q, const std::vector<std::string>& xi,
           const std::vector<std::string>& tau, const std::vector<std::string>& sigma,
           const std::vector<std::string>& t, const std::vector<std::string>& s) {
            BetheParams left{SV(tau), SV(sigma)}, right{SV(t), SV(s)};
            CompareReport rep = compare_scalar_products(chain_of(q, xi), left, right);
            py::dict d;
            d["direct"] = rep.direct.str();
            d["kernel"] = rep.kernel.str();
            d["normalization"] = rep.normalization.str();
            d["pass"] = rep.pass;
            d["residue_tree_nodes"] = rep.residue_tree_nodes;
            d["elapsed_ms"] = rep.elapsed_ms;
            return d;
        },
        py::arg("q"), py::arg("xi"), py::arg("tau"), py::arg("sigma"), py::arg("t"),
        py::arg("s"));

    m.def(
        "kernel_Y",
        [](const std::string& q, const std::vector<std::string>& t,
           const std::vector<std::string>& x) { return kernel_Y(S(q), SV(t), SV(x)).str(); },
        py::arg("q"), py::arg("t"), py::arg("x"));
    m.def(
        "kernel_Z",
        [](const std::string& q, const std::vector<std::string>& t,
           const std::vector<std::string>& x) { return kernel_Z(S(q), SV(t), SV(x)).str(); },
        py::arg("q"), py::arg("t"), py::arg("x"));
    m.def(
        "kernel_KE",
        [](const std::string& q, const std::vector<std::string>& tau,
           const std::vector<std::string>& sigma, const std::vector<std::string>& x,
           const std::vector<std::string>& y) {
            return kernel_KE(S(q), SV(tau), SV(sigma), SV(x), SV(y)).str();
        },
        py::arg("q"), py::arg("tau"), py::arg("sigma"), py::arg("x"), py::arg("y"));
    m.def(
        "kernel_KF",
        [](const std::string& q, const std::vector<std::string>& t,
           const std::vector<std::string>& s, const std::vector<std::string>& x,
           const std::vector<std::string>& y) {
            return kernel_KF(S(q), SV(t), SV(s), SV(x), SV(y)).str();
        },
        py::arg("q"), py::arg("t"), py::arg("s"), py::arg("x"), py::arg("y"));

    m.def(
        "izergin_determinant",
        [](const std::string& q, const std::vector<std::string>& t,
           const std::vector<std::string>& x) {
            return izergin_determinant(S(q), SV(t), SV(x)).str();
        },
        py::arg("q"), py::arg("t"), py::arg("x"));
    m.def(
        "check_izergin_identity",
        [](const std::string& q, const std::vector<std::string>& t,
           const std::vector<std::string>& x) {
            return check_izergin_identity(S(q), SV(t), SV(x)).str();
        },
        py::arg("q"), py::arg("t"), py::arg("x"));
}
