#include "vindec/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace vindec {

Json json_bigint(const BigInt& z) {
    static const BigInt lim = BigInt(1) << 53;
    if (z > -lim && z < lim) return Json(z.convert_to<i64>());
    return Json(z.str());
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    return f;
}

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) return true;
    }
    return false;
}

}  // namespace

Curve load_curve_config(std::istream& in) {
    std::string kind;
    int n = 0;
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (next_content_line(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "kind") {
            ls >> kind;
        } else if (key == "n") {
            ls >> n;
        } else if (key == "coeff") {
            std::vector<Rational> row;
            std::string tok;
            while (ls >> tok) row.push_back(parse_rational(tok));
            rows.push_back(std::move(row));
        } else {
            throw std::runtime_error("curve config: unknown key '" + key + "'");
        }
    }
    if (kind == "normalized-moment") return Curve::normalized_moment(n);
    if (kind == "standard-moment") return Curve::standard_moment(n);
    if (kind == "polynomial") {
        if (n > 0 && static_cast<int>(rows.size()) != n)
            throw std::runtime_error("curve config: coeff row count != n");
        return Curve::polynomial(std::move(rows));
    }
    throw std::runtime_error("curve config: unknown kind '" + kind + "'");
}

Curve load_curve_file(const std::string& path) {
    auto f = open_or_throw(path);
    return load_curve_config(f);
}

std::vector<i64> load_subset(std::istream& in) {
    std::vector<i64> S;
    std::string line;
    while (next_content_line(in, line)) {
        std::istringstream ls(line);
        i64 v;
        while (ls >> v) S.push_back(v);
    }
    return S;
}

std::vector<i64> load_subset_file(const std::string& path) {
    auto f = open_or_throw(path);
    return load_subset(f);
}

PhiMap load_phi_table(std::istream& in) {
    std::map<i64, std::vector<BigInt>> rows;
    int n = -1;
    std::string line;
    while (next_content_line(in, line)) {
        std::istringstream ls(line);
        i64 j;
        if (!(ls >> j)) throw std::runtime_error("phi table: bad line '" + line + "'");
        std::vector<BigInt> row;
        std::string tok;
        while (ls >> tok) row.emplace_back(tok);
        if (n < 0) n = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != n)
            throw std::runtime_error("phi table: inconsistent row width");
        rows[j] = std::move(row);
    }
    if (rows.empty()) throw std::runtime_error("phi table: empty");
    i64 N = rows.rbegin()->first;
    std::vector<BigInt> flat(static_cast<std::size_t>(N) * n);
    for (i64 j = 1; j <= N; ++j) {
        auto it = rows.find(j);
        if (it == rows.end()) throw std::runtime_error("phi table: missing row " + std::to_string(j));
        for (int i = 0; i < n; ++i) flat[static_cast<std::size_t>(j - 1) * n + i] = it->second[static_cast<std::size_t>(i)];
    }
    return PhiMap::custom(N, n, std::move(flat));
}

PhiMap load_phi_table_file(const std::string& path) {
    auto f = open_or_throw(path);
    return load_phi_table(f);
}

std::vector<std::pair<Rational, Rational>> load_family(std::istream& in) {
    std::vector<std::pair<Rational, Rational>> out;
    std::string line;
    while (next_content_line(in, line)) {
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a >> b)) throw std::runtime_error("family: bad line '" + line + "'");
        out.emplace_back(parse_rational(a), parse_rational(b));
    }
    return out;
}

std::vector<std::pair<Rational, Rational>> load_family_file(const std::string& path) {
    auto f = open_or_throw(path);
    return load_family(f);
}

}  // namespace vindec
