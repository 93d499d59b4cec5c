#include "bipinv/integer_matrix.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "bipinv/error.hpp"

namespace bipinv {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
        }
        for (long v : row) data_.emplace_back(v);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::size_t IntegerMatrix::nonzero_count() const {
    std::size_t count = 0;
    for (const auto& v : data_) count += sgn(v) != 0;
    return count;
}

bool IntegerMatrix::is_zero_one() const {
    for (const auto& v : data_)
        if (v != 0 && v != 1) return false;
    return true;
}

bool IntegerMatrix::is_unit_lower_triangular() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, i) != 1) return false;
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (sgn((*this)(i, j)) != 0) return false;
    }
    return true;
}

bool IntegerMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool IntegerMatrix::is_nonnegative() const {
    for (const auto& v : data_)
        if (sgn(v) < 0) return false;
    return true;
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
    }
    IntegerMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Integer& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

std::string to_matrix_market(const IntegerMatrix& m) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate integer general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonzero_count() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) out << i + 1 << ' ' << j + 1 << ' ' << m(i, j).get_str() << '\n';
    return out.str();
}

IntegerMatrix parse_matrix_market(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Syntax, "matrix market line " + std::to_string(line_no) + ": " + what);
    };

    if (!std::getline(in, line)) fail("empty document");
    ++line_no;
    std::string field;
    {
        std::istringstream banner(line);
        std::string tag, object, format, symmetry;
        banner >> tag >> object >> format >> field >> symmetry;
        if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate") {
            fail("expected '%%MatrixMarket matrix coordinate' banner");
        }
        if (field != "integer" && field != "pattern") fail("unsupported field '" + field + "'");
        if (symmetry != "general") fail("unsupported symmetry '" + symmetry + "'");
    }
    const bool pattern = field == "pattern";

    bool have_size = false;
    std::size_t rows = 0, cols = 0, nnz = 0, seen = 0;
    IntegerMatrix m;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream fields(line);
        if (!have_size) {
            if (!(fields >> rows >> cols >> nnz)) fail("expected 'rows cols nnz'");
            m = IntegerMatrix(rows, cols);
            have_size = true;
            continue;
        }
        std::size_t i = 0, j = 0;
        std::string value = "1";
        if (!(fields >> i >> j)) fail("expected 'i j value'");
        if (!pattern && !(fields >> value)) fail("missing value");
        if (i < 1 || i > rows || j < 1 || j > cols) fail("index out of range");
        Integer v;
        if (v.set_str(value, 10) != 0) fail("bad integer '" + value + "'");
        m(i - 1, j - 1) = v;
        ++seen;
    }
    if (!have_size) fail("missing size line");
    if (seen != nnz) fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
    return m;
}

IntegerMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_market(buffer.str());
}

void write_matrix_market(const IntegerMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << to_matrix_market(m);
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
        os << ']';
    }
    return os << ']';
}

}  // namespace bipinv
