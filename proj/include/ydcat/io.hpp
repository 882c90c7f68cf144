#ifndef YDCAT_IO_HPP
#define YDCAT_IO_HPP

#include "ydcat/galois.hpp"

#include "json.hpp"

#include <fstream>

namespace ydcat {

using json = nlohmann::json;

/** \brief Raised when a report holds a value JSON cannot carry faithfully (NaN). */
struct EncodeError : Error {
    using Error::Error;
};

namespace io {

inline json encode_complex(cd z) { return json::array({z.real(), z.imag()}); }

inline double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path + ": expected a number");
    return j.get<double>();
}

inline int int_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
    return j.get<int>();
}

inline cd complex_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw ParseError(path + ": expected [re, im]");
    return {number_at(j[0], path + "/0"), number_at(j[1], path + "/1")};
}

inline const json& member(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + ": missing key '" + key + "'");
    return *it;
}

inline const json& array_at(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array");
    return j;
}

inline int index_at(const json& j, const std::string& path, int bound) {
    int v = int_at(j, path);
    if (v < 0 || v >= bound) throw ParseError(path + ": index " + std::to_string(v) + " out of range");
    return v;
}

inline json encode_vec(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(encode_complex(v(i)));
    return a;
}

inline Vec decode_vec(const json& j, int n, const std::string& path) {
    const json& a = array_at(j, path);
    if (int(a.size()) != n) throw ParseError(path + ": expected " + std::to_string(n) + " entries");
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = complex_at(a[i], path + "/" + std::to_string(i));
    return v;
}

/** Dense matrix as a list of columns of [re, im]. */
inline json encode_columns(const Mat& M) {
    json a = json::array();
    for (int c = 0; c < M.cols(); ++c) a.push_back(encode_vec(M.col(c)));
    return a;
}

/** Nonzero entries as [row, col, [re, im]]. */
inline json encode_sparse(const Mat& M) {
    json a = json::array();
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c)
            if (M(r, c) != cd(0)) a.push_back(json::array({r, c, encode_complex(M(r, c))}));
    return a;
}

inline Mat decode_sparse(const json& j, int rows, int cols, const std::string& path) {
    Mat M = Mat::Zero(rows, cols);
    const json& a = array_at(j, path);
    for (size_t e = 0; e < a.size(); ++e) {
        std::string p = path + "/" + std::to_string(e);
        const json& t = array_at(a[e], p);
        if (t.size() != 3) throw ParseError(p + ": expected [row, col, [re, im]]");
        M(index_at(t[0], p + "/0", rows), index_at(t[1], p + "/1", cols)) = complex_at(t[2], p + "/2");
    }
    return M;
}

inline json read_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParseError(file + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(file + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace io

/** \brief Hopf data as JSON: tensors as nested arrays indexed (i, j, k), complex numbers as [re, im]. */
inline json encode_hopf(const HopfAlgebraData& A, const std::string& name) {
    const int n = A.dim;
    auto tensor = [n](const Tensor3& t) {
        json a = json::array();
        for (int i = 0; i < n; ++i) {
            json b = json::array();
            for (int j = 0; j < n; ++j) {
                json c = json::array();
                for (int k = 0; k < n; ++k) c.push_back(io::encode_complex(t(i, j, k)));
                b.push_back(c);
            }
            a.push_back(b);
        }
        return a;
    };
    auto matrix = [n](const Mat& M) {
        json a = json::array();
        for (int r = 0; r < n; ++r) {
            json row = json::array();
            for (int c = 0; c < n; ++c) row.push_back(io::encode_complex(M(r, c)));
            a.push_back(row);
        }
        return a;
    };
    json j;
    j["format"] = "ydcat-hopf";
    j["name"] = name;
    j["dim"] = n;
    j["basis_labels"] = A.basis_labels;
    j["mult"] = tensor(dense_mult(A));
    j["unit"] = io::encode_vec(A.unit);
    j["comult"] = tensor(dense_comult(A));
    j["counit"] = io::encode_vec(A.counit);
    j["antipode"] = matrix(A.antipode);
    j["star"] = matrix(A.star);
    if (A.truncated()) {
        j["grade"] = A.grade;
        j["max_grade"] = A.max_grade;
    }
    return j;
}

inline HopfAlgebraData decode_hopf(const json& j, const std::string& path = "") {
    using namespace io;
    if (j.contains("format") && j["format"] != "ydcat-hopf") throw ParseError(path + "/format: expected \"ydcat-hopf\"");
    HopfAlgebraData A;
    A.dim = int_at(member(j, "dim", path), path + "/dim");
    if (A.dim <= 0) throw ParseError(path + "/dim: must be positive");
    const int n = A.dim;
    auto sized = [n](const json& x, const std::string& p) -> const json& {
        const json& a = array_at(x, p);
        if (int(a.size()) != n) throw ParseError(p + ": expected " + std::to_string(n) + " entries");
        return a;
    };
    auto tensor = [&](const std::string& key) {
        Tensor3 t(n, n, n);
        const json& a = sized(member(j, key, path), path + "/" + key);
        for (int i = 0; i < n; ++i) {
            std::string pi = path + "/" + key + "/" + std::to_string(i);
            const json& b = sized(a[i], pi);
            for (int jj = 0; jj < n; ++jj) {
                std::string pj = pi + "/" + std::to_string(jj);
                const json& c = sized(b[jj], pj);
                for (int k = 0; k < n; ++k) t(i, jj, k) = complex_at(c[k], pj + "/" + std::to_string(k));
            }
        }
        return t;
    };
    auto matrix = [&](const std::string& key) {
        Mat M(n, n);
        const json& a = sized(member(j, key, path), path + "/" + key);
        for (int r = 0; r < n; ++r) {
            std::string pr = path + "/" + key + "/" + std::to_string(r);
            const json& row = sized(a[r], pr);
            for (int c = 0; c < n; ++c) M(r, c) = complex_at(row[c], pr + "/" + std::to_string(c));
        }
        return M;
    };
    const json& labels = sized(member(j, "basis_labels", path), path + "/basis_labels");
    for (int i = 0; i < n; ++i) {
        if (!labels[i].is_string()) throw ParseError(path + "/basis_labels/" + std::to_string(i) + ": expected a string");
        A.basis_labels.push_back(labels[i].get<std::string>());
    }
    set_mult(A, tensor("mult"));
    set_comult(A, tensor("comult"));
    A.unit = decode_vec(member(j, "unit", path), n, path + "/unit");
    A.counit = decode_vec(member(j, "counit", path), n, path + "/counit");
    A.antipode = matrix("antipode");
    A.star = matrix("star");
    if (j.contains("grade")) {
        const json& g = sized(j["grade"], path + "/grade");
        for (int i = 0; i < n; ++i) A.grade.push_back(int_at(g[i], path + "/grade/" + std::to_string(i)));
        A.max_grade = int_at(member(j, "max_grade", path), path + "/max_grade");
    }
    return A;
}

inline bool hopf_identical(const HopfAlgebraData& a, const HopfAlgebraData& b) {
    if (a.dim != b.dim || a.basis_labels != b.basis_labels || a.grade != b.grade || a.max_grade != b.max_grade)
        return false;
    if (a.unit != b.unit || a.counit != b.counit || a.antipode != b.antipode || a.star != b.star) return false;
    for (size_t i = 0; i < a.mult.size(); ++i) {
        if (a.mult[i].size() != b.mult[i].size()) return false;
        for (size_t k = 0; k < a.mult[i].size(); ++k)
            if (a.mult[i][k].k != b.mult[i][k].k || a.mult[i][k].c != b.mult[i][k].c) return false;
    }
    for (size_t i = 0; i < a.comult.size(); ++i) {
        if (a.comult[i].size() != b.comult[i].size()) return false;
        for (size_t k = 0; k < a.comult[i].size(); ++k) {
            const auto &x = a.comult[i][k], &y = b.comult[i][k];
            if (x.j != y.j || x.k != y.k || x.c != y.c) return false;
        }
    }
    return true;
}

/** \brief Subgroup fixture: the restriction matrix and the target Hopf data. */
struct SubgroupFixture {
    std::string group;  // name of the ambient fixture
    SubgroupData sub;
};

inline json encode_subgroup(const SubgroupFixture& f) {
    json j;
    j["format"] = "ydcat-subgroup";
    j["name"] = f.sub.name;
    j["group"] = f.group;
    j["rows"] = f.sub.p.rows();
    j["cols"] = f.sub.p.cols();
    j["p"] = io::encode_sparse(f.sub.p);
    j["target"] = encode_hopf(f.sub.H, f.sub.name);
    return j;
}

inline SubgroupFixture decode_subgroup(const json& j, const std::string& path = "") {
    using namespace io;
    const json& fmt = member(j, "format", path);
    if (fmt != "ydcat-subgroup") throw ParseError(path + "/format: expected \"ydcat-subgroup\"");
    SubgroupFixture f;
    const json& name = member(j, "name", path);
    const json& group = member(j, "group", path);
    if (!name.is_string()) throw ParseError(path + "/name: expected a string");
    if (!group.is_string()) throw ParseError(path + "/group: expected a string");
    f.sub.name = name.get<std::string>();
    f.group = group.get<std::string>();
    int rows = int_at(member(j, "rows", path), path + "/rows");
    int cols = int_at(member(j, "cols", path), path + "/cols");
    f.sub.H = decode_hopf(member(j, "target", path), path + "/target");
    if (rows != f.sub.H.dim) throw ParseError(path + "/rows: does not match the target dimension");
    f.sub.p = decode_sparse(member(j, "p", path), rows, cols, path + "/p");
    return f;
}

inline HopfAlgebraData load_hopf(const std::string& file) {
    json j = io::read_json_file(file);
    try {
        return decode_hopf(j);
    } catch (const ParseError& e) {
        throw ParseError(file + ":" + e.what());
    }
}

inline SubgroupFixture load_subgroup(const std::string& file) {
    json j = io::read_json_file(file);
    try {
        return decode_subgroup(j);
    } catch (const ParseError& e) {
        throw ParseError(file + ":" + e.what());
    }
}

inline void write_json_file(const std::string& file, const json& j) {
    std::ofstream out(file);
    if (!out) throw Error(file + ": cannot write");
    out << j.dump(2) << "\n";
}

/** \brief Residual as JSON: NaN is refused, infinities become the string "inf". */
inline json encode_residual(double r, const std::string& what) {
    if (std::isnan(r)) throw EncodeError("NaN residual in " + what);
    if (std::isinf(r)) return r > 0 ? json("inf") : json("-inf");
    return r;
}

inline json encode_report(const ValidationReport& r) {
    json j;
    j["passed"] = r.passed();
    j["seed"] = r.seed;
    json cs = json::array();
    for (const auto& c : r.checks) {
        json x;
        x["name"] = c.name;
        x["residual"] = encode_residual(c.residual, c.name);
        x["tol"] = encode_residual(c.tol, c.name + " tolerance");
        x["evaluated"] = c.evaluated;
        x["skipped"] = c.skipped;
        x["sampled"] = c.sampled;
        x["passed"] = c.passed();
        cs.push_back(x);
    }
    j["checks"] = cs;
    j["notes"] = r.notes;
    return j;
}

inline double decode_residual(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j == "inf") return std::numeric_limits<double>::infinity();
        if (j == "-inf") return -std::numeric_limits<double>::infinity();
        throw ParseError(path + ": expected a number or \"inf\"");
    }
    return io::number_at(j, path);
}

inline ValidationReport decode_report(const json& j, const std::string& path = "") {
    using namespace io;
    ValidationReport r;
    r.seed = member(j, "seed", path).get<uint64_t>();
    const json& cs = array_at(member(j, "checks", path), path + "/checks");
    for (size_t i = 0; i < cs.size(); ++i) {
        std::string p = path + "/checks/" + std::to_string(i);
        Check& c = r.add(member(cs[i], "name", p).get<std::string>(), decode_residual(member(cs[i], "residual", p), p + "/residual"),
                         decode_residual(member(cs[i], "tol", p), p + "/tol"));
        c.evaluated = member(cs[i], "evaluated", p).get<long>();
        c.skipped = member(cs[i], "skipped", p).get<long>();
        c.sampled = member(cs[i], "sampled", p).get<bool>();
    }
    for (const auto& n : array_at(member(j, "notes", path), path + "/notes")) r.notes.push_back(n.get<std::string>());
    return r;
}

}  // namespace ydcat

#endif
