#include "lpmf/documents.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lpmf {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

constexpr const char* kFactorOrderNote =
    "factors[0] is the leftmost factor; the matrix is the product "
    "factors[0] * factors[1] * ... in the written order";

constexpr const char* kLatticeOrderNote =
    "stages[0] is the leftmost stage; the matrix is the product "
    "stages[0] * ... * stages[last] * diag";

void require_members(const json& j, const std::set<std::string>& required,
                     const std::set<std::string>& optional, const char* what) {
    if (!j.is_object()) throw Error(Errc::schema_error, std::string(what) + " must be an object");
    for (const auto& item : j.items()) {
        if (!required.contains(item.key()) && !optional.contains(item.key()))
            throw Error(Errc::schema_error,
                        std::string("unknown member \"") + item.key() + "\" in " + what);
    }
    for (const auto& key : required)
        if (!j.contains(key))
            throw Error(Errc::schema_error, std::string("missing member \"") + key + "\" in " + what);
}

int get_int(const json& j, const char* key, const char* what) {
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw Error(Errc::schema_error, std::string(key) + " must be an integer in " + what);
    return v.get<int>();
}

int get_version(const json& j, const char* what) {
    int v = get_int(j, "schema_version", what);
    if (v != kSchemaVersion)
        throw Error(Errc::schema_error, std::string("unsupported schema_version in ") + what);
    return v;
}

Field get_field(const json& j, const char* what) {
    const json& v = j.at("field");
    if (!v.is_string()) throw Error(Errc::schema_error, std::string("field must be a string in ") + what);
    return field_from_name(v.get<std::string>());
}

int get_rank(const json& j, const char* what) {
    int rank = get_int(j, "rank", what);
    if (rank < 1) throw Error(Errc::schema_error, std::string("rank must be >= 1 in ") + what);
    return rank;
}

ConstMatrix grid_to_const(const json& v, int rank, Field f, const char* what) {
    if (!v.is_array() || v.size() != static_cast<size_t>(rank))
        throw Error(Errc::schema_error, std::string(what) + " must be a rank x rank grid");
    ConstMatrix m(rank, f);
    for (int i = 0; i < rank; ++i) {
        const json& row = v.at(i);
        if (!row.is_array() || row.size() != static_cast<size_t>(rank))
            throw Error(Errc::schema_error, std::string(what) + " must be a rank x rank grid");
        for (int j = 0; j < rank; ++j) {
            const json& cell = row.at(j);
            if (!cell.is_string())
                throw Error(Errc::schema_error, std::string(what) + " entries must be scalar strings");
            m.at(i, j) = scalar_parse(cell.get<std::string>(), f);
        }
    }
    return m;
}


json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error(Errc::schema_error, std::string("invalid JSON in ") + what);
    return j;
}

// Hand-rolled emission so documents stay diffable: fixed member order,
// one grid row per line. Scalar strings never need JSON escaping.
std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string grid_line(const ConstMatrix& m, int row) {
    std::string out = "[";
    for (int j = 0; j < m.rank(); ++j) {
        if (j) out += ", ";
        out += quoted(scalar_format(m.at(row, j)));
    }
    return out + "]";
}

std::string grid_text(const ConstMatrix& m, const std::string& indent) {
    std::string out = "[\n";
    for (int i = 0; i < m.rank(); ++i) {
        out += indent + "  " + grid_line(m, i);
        out += i + 1 < m.rank() ? ",\n" : "\n";
    }
    return out + indent + "]";
}

} // namespace

std::string matrix_to_text(const LPMatrix& a) {
    BlockForm bf = to_block_form(a); // rejects the zero matrix
    std::string out = "{\n";
    out += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
    out += "  \"field\": " + quoted(field_name(a.field())) + ",\n";
    out += "  \"rank\": " + std::to_string(a.rank()) + ",\n";
    out += "  \"blocks\": [\n";
    // document powers are exponents of z, ascending: block k contributes at z^{-k}
    bool first = true;
    for (size_t idx = bf.blocks.size(); idx-- > 0;) {
        const int k = bf.k0 + static_cast<int>(idx);
        if (bf.blocks[idx].is_zero()) continue;
        if (!first) out += ",\n";
        first = false;
        out += "    {\"power\": " + std::to_string(-k) + ", \"matrix\": " +
               grid_text(bf.blocks[idx], "    ") + "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

LPMatrix matrix_from_text(const std::string& text) {
    json j = parse_json(text, "matrix document");
    require_members(j, {"schema_version", "field", "rank", "blocks"}, {}, "matrix document");
    get_version(j, "matrix document");
    const Field f = get_field(j, "matrix document");
    const int rank = get_rank(j, "matrix document");
    const json& blocks = j.at("blocks");
    if (!blocks.is_array() || blocks.empty())
        throw Error(Errc::schema_error, "blocks must be a nonempty array in matrix document");

    LPMatrix a(rank, f);
    bool have_prev = false;
    int prev_power = 0;
    for (const json& b : blocks) {
        require_members(b, {"power", "matrix"}, {}, "matrix block");
        const int power = get_int(b, "power", "matrix block");
        if (have_prev && power <= prev_power)
            throw Error(Errc::schema_error, "block powers must be strictly increasing");
        prev_power = power;
        have_prev = true;
        ConstMatrix blk = grid_to_const(b.at("matrix"), rank, f, "matrix block");
        if (blk.is_zero()) throw Error(Errc::schema_error, "all-zero block in matrix document");
        const int k = -power; // coefficient of z^{-k}
        for (int i = 0; i < rank; ++i)
            for (int jj = 0; jj < rank; ++jj)
                if (!blk.at(i, jj).is_zero()) a.at(i, jj).set_coeff(k, blk.at(i, jj));
    }
    return a;
}

std::string factorization_to_text(const NilFactorization& f) {
    std::string out = "{\n";
    out += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
    out += "  \"field\": " + quoted(field_name(f.field)) + ",\n";
    out += "  \"rank\": " + std::to_string(f.rank) + ",\n";
    out += "  \"order_note\": " + quoted(kFactorOrderNote) + ",\n";
    out += "  \"factors\": [";
    for (size_t idx = 0; idx < f.factors.size(); ++idx) {
        out += idx ? ",\n" : "\n";
        out += "    {\"k\": " + std::to_string(f.factors[idx].k) + ", \"N\": " +
               grid_text(f.factors[idx].N, "    ") + "}";
    }
    out += f.factors.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

NilFactorization factorization_from_text(const std::string& text) {
    json j = parse_json(text, "factorization document");
    require_members(j, {"schema_version", "field", "rank", "order_note", "factors"}, {},
                    "factorization document");
    get_version(j, "factorization document");
    NilFactorization f;
    f.field = get_field(j, "factorization document");
    f.rank = get_rank(j, "factorization document");
    if (!j.at("order_note").is_string() || j.at("order_note").get<std::string>() != kFactorOrderNote)
        throw Error(Errc::schema_error, "order_note does not match the expected product order");
    const json& factors = j.at("factors");
    if (!factors.is_array())
        throw Error(Errc::schema_error, "factors must be an array in factorization document");
    for (const json& item : factors) {
        require_members(item, {"k", "N"}, {}, "factor");
        const int k = get_int(item, "k", "factor");
        ConstMatrix n = grid_to_const(item.at("N"), f.rank, f.field, "factor N");
        if (k < 1) throw Error(Errc::schema_error, "factor shift k must be >= 1");
        if (n.is_zero() || !n.squares_to_zero())
            throw Error(Errc::schema_error, "factor N must be nonzero with N^2 = 0");
        f.factors.push_back(PrimitiveFactor{std::move(n), k});
    }
    return f;
}

std::string lattice_to_text(const LatticeForm& lf) {
    std::string out = "{\n";
    out += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
    out += "  \"field\": " + quoted(field_name(lf.field)) + ",\n";
    out += "  \"rank\": " + std::to_string(lf.rank) + ",\n";
    out += "  \"order_note\": " + quoted(kLatticeOrderNote) + ",\n";
    out += "  \"stages\": [";
    for (size_t idx = 0; idx < lf.stages.size(); ++idx) {
        const auto& s = lf.stages[idx];
        out += idx ? ",\n" : "\n";
        out += "    {\"i\": " + std::to_string(s.i) + ", \"j\": " + std::to_string(s.j) +
               ", \"a\": " + quoted(scalar_format(s.a)) + ", \"k\": " + std::to_string(s.k) + "}";
    }
    out += lf.stages.empty() ? "],\n" : "\n  ],\n";
    out += "  \"diag\": [";
    for (int i = 0; i < lf.rank; ++i) {
        if (i) out += ", ";
        out += quoted(scalar_format(lf.diag.at(i, i)));
    }
    out += "]\n}\n";
    return out;
}

LatticeForm lattice_from_text(const std::string& text) {
    json j = parse_json(text, "lattice document");
    require_members(j, {"schema_version", "field", "rank", "order_note", "stages", "diag"}, {},
                    "lattice document");
    get_version(j, "lattice document");
    LatticeForm lf;
    lf.field = get_field(j, "lattice document");
    lf.rank = get_rank(j, "lattice document");
    if (!j.at("order_note").is_string() ||
        j.at("order_note").get<std::string>() != kLatticeOrderNote)
        throw Error(Errc::schema_error, "order_note does not match the expected product order");
    const json& stages = j.at("stages");
    if (!stages.is_array()) throw Error(Errc::schema_error, "stages must be an array");
    for (const json& item : stages) {
        require_members(item, {"i", "j", "a", "k"}, {}, "lattice stage");
        LatticeStage s;
        s.i = get_int(item, "i", "lattice stage");
        s.j = get_int(item, "j", "lattice stage");
        s.k = get_int(item, "k", "lattice stage");
        if (!item.at("a").is_string())
            throw Error(Errc::schema_error, "stage coefficient must be a scalar string");
        s.a = scalar_parse(item.at("a").get<std::string>(), lf.field);
        if (s.i == s.j || s.i < 0 || s.j < 0 || s.i >= lf.rank || s.j >= lf.rank)
            throw Error(Errc::schema_error, "stage indices must be distinct and in range");
        if (s.k < 0) throw Error(Errc::schema_error, "stage shift must be >= 0");
        if (s.a.is_zero()) throw Error(Errc::schema_error, "stage coefficient must be nonzero");
        lf.stages.push_back(std::move(s));
    }
    const json& diag = j.at("diag");
    if (!diag.is_array() || diag.size() != static_cast<size_t>(lf.rank))
        throw Error(Errc::schema_error, "diag must list rank entries");
    lf.diag = ConstMatrix(lf.rank, lf.field);
    for (int i = 0; i < lf.rank; ++i) {
        if (!diag.at(i).is_string())
            throw Error(Errc::schema_error, "diag entries must be scalar strings");
        lf.diag.at(i, i) = scalar_parse(diag.at(i).get<std::string>(), lf.field);
    }
    return lf;
}

std::string bundle_to_text(const WaveletFactorizationBundle& b) {
    const int m = b.H.rank();
    std::string out = "{\n";
    out += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
    out += "  \"field\": " + quoted(field_name(b.H.field())) + ",\n";
    out += "  \"rank\": " + std::to_string(m) + ",\n";
    out += "  \"k0\": " + std::to_string(b.k0) + ",\n";
    out += "  \"paraunitary\": [";
    for (size_t idx = 0; idx < b.paraunitary.size(); ++idx) {
        out += idx ? ",\n" : "\n";
        out += "    [";
        const auto& v = b.paraunitary[idx].v;
        for (size_t e = 0; e < v.size(); ++e) {
            if (e) out += ", ";
            out += quoted(scalar_format(v[e]));
        }
        out += "]";
    }
    out += b.paraunitary.empty() ? "],\n" : "\n  ],\n";
    out += "  \"factors\": [";
    for (size_t idx = 0; idx < b.nil_factors.factors.size(); ++idx) {
        out += idx ? ",\n" : "\n";
        out += "    {\"k\": " + std::to_string(b.nil_factors.factors[idx].k) + ", \"N\": " +
               grid_text(b.nil_factors.factors[idx].N, "    ") + "}";
    }
    out += b.nil_factors.factors.empty() ? "],\n" : "\n  ],\n";
    out += "  \"G\": " + grid_text(b.G, "  ") + ",\n";
    out += "  \"H\": " + grid_text(b.H, "  ") + "\n";
    out += "}\n";
    return out;
}

WaveletFactorizationBundle bundle_from_text(const std::string& text) {
    json j = parse_json(text, "bundle document");
    require_members(j, {"schema_version", "field", "rank", "k0", "paraunitary", "factors", "G"},
                    {"H"}, "bundle document");
    get_version(j, "bundle document");
    const Field f = get_field(j, "bundle document");
    const int rank = get_rank(j, "bundle document");
    if (rank < 2) throw Error(Errc::schema_error, "bundle rank must be >= 2");

    WaveletFactorizationBundle b;
    b.k0 = get_int(j, "k0", "bundle document");

    const json& paraunitary = j.at("paraunitary");
    if (!paraunitary.is_array()) throw Error(Errc::schema_error, "paraunitary must be an array");
    for (const json& vec : paraunitary) {
        if (!vec.is_array() || vec.size() != static_cast<size_t>(rank))
            throw Error(Errc::schema_error, "paraunitary vectors must list rank entries");
        std::vector<FieldScalar> v;
        for (const json& cell : vec) {
            if (!cell.is_string())
                throw Error(Errc::schema_error, "paraunitary entries must be scalar strings");
            v.push_back(scalar_parse(cell.get<std::string>(), f));
        }
        b.paraunitary.push_back(make_paraunitary(std::move(v)));
    }

    b.nil_factors.rank = rank;
    b.nil_factors.field = f;
    const json& factors = j.at("factors");
    if (!factors.is_array()) throw Error(Errc::schema_error, "factors must be an array");
    for (const json& item : factors) {
        require_members(item, {"k", "N"}, {}, "factor");
        const int k = get_int(item, "k", "factor");
        ConstMatrix n = grid_to_const(item.at("N"), rank, f, "factor N");
        if (k < 1) throw Error(Errc::schema_error, "factor shift k must be >= 1");
        if (n.is_zero() || !n.squares_to_zero())
            throw Error(Errc::schema_error, "factor N must be nonzero with N^2 = 0");
        b.nil_factors.factors.push_back(PrimitiveFactor{std::move(n), k});
    }

    b.G = grid_to_const(j.at("G"), rank - 1, f, "G");
    if (b.G.det().is_zero()) throw Error(Errc::schema_error, "G must be invertible");

    if (j.contains("H")) {
        ConstMatrix h = grid_to_const(j.at("H"), rank, f, "H");
        b.H = haar_matrix(rank, f, h);
    } else {
        b.H = haar_matrix(rank, f); // throws HAAR_UNDEFINED beyond rank 2
    }
    return b;
}

std::string read_text_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    out << content;
    if (!out) throw Error(Errc::io_error, "write failed for " + path);
}

} // namespace lpmf
