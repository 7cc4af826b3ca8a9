#include "qi/mat.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qi {

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const Mat& a, const Mat& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

void require_finite(const Mat& a, const std::string& what) {
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i) {
            const Complex& z = a(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw PreconditionError(what + ": non-finite entry at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

Mat add(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("add: shape mismatch");
    return a + b;
}

Mat subtract(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("subtract: shape mismatch");
    return a - b;
}

Mat scale(Complex c, const Mat& a) { return c * a; }

Mat mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw DimensionError("mul: inner dimensions disagree");
    return a * b;
}

Mat adjoint(const Mat& a) { return a.adjoint(); }

Complex trace(const Mat& a) {
    if (a.rows() != a.cols())
        throw DimensionError("trace: matrix is not square");
    return a.trace();
}

Mat tensor(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Complex inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw DimensionError("inner: vector lengths disagree");
    return u.dot(v); // Eigen's dot conjugates the left argument
}

Mat outer(const Vec& u, const Vec& v) { return u * v.adjoint(); }

double vec_norm(const Vec& u) { return u.norm(); }

Mat identity(Index n) { return Mat::Identity(n, n); }

Mat zeros(Index rows, Index cols) { return Mat::Zero(rows, cols); }

Mat mat_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ParseError("matrix JSON: expected object with rows, cols, data");
    const auto rows = j["rows"].get<Index>();
    const auto cols = j["cols"].get<Index>();
    if (rows < 1 || cols < 1)
        throw ParseError("matrix JSON: rows and cols must be >= 1");
    const auto& data = j["data"];
    if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols)
        throw ParseError("matrix JSON: data length must equal rows*cols");
    Mat out(rows, cols);
    Index k = 0;
    for (const auto& entry : data) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
            throw ParseError("matrix JSON: each data entry must be [re, im]");
        const double re = entry[0].get<double>();
        const double im = entry[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError("matrix JSON: non-finite entry");
        out(k / cols, k % cols) = Complex(re, im);
        ++k;
    }
    return out;
}

std::string mat_to_json_text(const Mat& a) {
    nlohmann::json data = nlohmann::json::array();
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            data.push_back({a(i, j).real(), a(i, j).imag()});
    nlohmann::json j{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
    return j.dump();
}

Mat mat_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return mat_from_json_text(ss.str());
}

} // namespace qi
