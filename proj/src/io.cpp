#include "baryfit/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace baryfit {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool blank_or_comment(std::string_view line) {
    line = trim(line);
    return line.empty() || line.front() == '#';
}

std::vector<double> parse_row(std::string_view line, std::size_t min_fields, std::size_t lineno) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view field =
            trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (field.empty()) throw DataError("line " + std::to_string(lineno) + ": empty field");
        if (field.front() == '+') field.remove_prefix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
            throw DataError("line " + std::to_string(lineno) + ": malformed number '" + std::string(field) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() < min_fields)
        throw DataError("line " + std::to_string(lineno) + ": expected " + std::to_string(min_fields) +
                        " columns, found " + std::to_string(out.size()));
    return out;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw DataError("model JSON: expected an object with 're' and 'im'");
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

std::vector<Complex> complex_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw DataError(std::string("model JSON: missing array '") + key + "'");
    std::vector<Complex> out;
    for (const auto& e : j.at(key)) out.push_back(complex_from(e));
    return out;
}

void write_row(std::ostream& out, const auto& vec) {
    for (Eigen::Index j = 0; j < vec.size(); ++j) {
        if (j > 0) out << ',';
        out << format_double(vec(j).real()) << ',' << format_double(vec(j).imag());
    }
    out << '\n';
}

void write_header(std::ostream& out, Eigen::Index cols) {
    for (Eigen::Index j = 1; j <= cols; ++j) {
        if (j > 1) out << ',';
        out << "re_" << j << ",im_" << j;
    }
    out << '\n';
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SampleSet parse_samples(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::vector<Complex> pts, vals;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line)) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto row = parse_row(line, 4, lineno);
        pts.emplace_back(row[0], row[1]);
        vals.emplace_back(row[2], row[3]);
    }
    if (pts.empty()) throw DataError("sample file contains no data rows");
    return SampleSet(std::move(pts), std::move(vals));
}

SampleSet load_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return parse_samples(in);
}

std::vector<Complex> load_points_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::vector<Complex> pts;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line)) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto row = parse_row(line, 2, lineno);
        pts.emplace_back(row[0], row[1]);
    }
    if (pts.empty()) throw DataError("point file contains no data rows");
    return pts;
}

void write_samples(std::ostream& out, const SampleSet& data) {
    out << kSampleHeader << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << format_double(data.point(i).real()) << ',' << format_double(data.point(i).imag()) << ','
            << format_double(data.value(i).real()) << ',' << format_double(data.value(i).imag()) << '\n';
    }
}

void save_samples(const std::filesystem::path& path, const SampleSet& data) {
    auto out = open_out(path);
    write_samples(out, data);
}

void write_trace(std::ostream& out, const FitTrace& trace) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        out << r.k << ',' << r.degree << ',' << format_double(r.support.real()) << ','
            << format_double(r.support.imag()) << ',' << format_double(r.raw_active_sq_err) << ','
            << format_double(r.l2) << ',' << format_double(r.linf) << ',' << branch_name(r.branch) << '\n';
    }
    out << "# stop_reason=" << stop_reason_name(trace.stop) << '\n';
}

void save_trace(const std::filesystem::path& path, const FitTrace& trace) {
    auto out = open_out(path);
    write_trace(out, trace);
}

std::string model_to_json(const RationalModel& model) {
    json j;
    if (model.is_constant()) {
        j["kind"] = "constant";
        j["constant"] = complex_json(model.constant_value());
        j["supports"] = json::array();
        j["values"] = json::array();
        j["weights"] = json::array();
    } else {
        j["kind"] = "barycentric";
        json s = json::array(), v = json::array(), w = json::array();
        for (std::size_t i = 0; i < model.size(); ++i) {
            s.push_back(complex_json(model.supports()[i]));
            v.push_back(complex_json(model.values()[i]));
            w.push_back(complex_json(model.weights()[i]));
        }
        j["supports"] = std::move(s);
        j["values"] = std::move(v);
        j["weights"] = std::move(w);
    }
    return j.dump(2) + "\n";
}

RationalModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("model JSON: ") + e.what());
    }
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "constant") return RationalModel::constant(complex_from(j.at("constant")));
        if (kind == "barycentric")
            return RationalModel::barycentric(complex_array(j, "supports"), complex_array(j, "values"),
                                              complex_array(j, "weights"));
        throw DataError("model JSON: unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw DataError(std::string("model JSON: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const RationalModel& model) {
    auto out = open_out(path);
    out << model_to_json(model);
}

RationalModel load_model(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

void save_realization(const std::filesystem::path& dir, const Realization& re) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "E.csv");
        write_header(out, re.E.cols());
        for (Eigen::Index i = 0; i < re.E.rows(); ++i) write_row(out, re.E.row(i));
    }
    {
        auto out = open_out(dir / "A.csv");
        write_header(out, re.A.cols());
        for (Eigen::Index i = 0; i < re.A.rows(); ++i) write_row(out, re.A.row(i));
    }
    for (const auto& [name, vec] : {std::pair{"b.csv", &re.b}, std::pair{"c.csv", &re.c}}) {
        auto out = open_out(dir / name);
        write_header(out, 1);
        for (Eigen::Index i = 0; i < vec->size(); ++i) write_row(out, vec->segment(i, 1));
    }
}

}  // namespace baryfit
