#include "icvistream/csvio.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace icvistream {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_number(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t')) --e;
    if (b == e) return false;
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e;
}

} // namespace

Dataset ingest_csv(const std::filesystem::path& path, bool has_labels) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    Dataset data;
    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);

        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (!parse_number(fields[i], row[i])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first_content_line) { // header
                first_content_line = false;
                continue;
            }
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": non-numeric field");
        }
        first_content_line = false;

        const std::size_t d = has_labels ? row.size() - 1 : row.size();
        if (has_labels && row.size() < 2) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected features plus a label column");
        }
        if (data.dim == 0) {
            data.dim = d;
        } else if (d != data.dim) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": ragged row (expected " + std::to_string(data.dim) +
                                     " features, got " + std::to_string(d) + ")");
        }
        if (has_labels) {
            const double lab = row.back();
            row.pop_back();
            data.y.push_back(static_cast<int>(lab));
        }
        data.x.push_back(std::move(row));
    }
    if (data.x.empty()) throw std::runtime_error(path.string() + ": no samples");
    return data;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data,
                       bool with_labels) {
    std::ostringstream out;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        for (std::size_t f = 0; f < data.x[i].size(); ++f) {
            if (f) out << ',';
            out << format_double(data.x[i][f]);
        }
        if (with_labels) out << ',' << data.y[i];
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<StepReport>& trace,
                     const std::vector<double>* ari_so_far) {
    std::ostringstream out;
    out << "t,assigned_cluster,k,P,rho_a,v,icvi_value";
    if (ari_so_far) out << ",ari_so_far";
    out << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& r = trace[i];
        out << r.t << ',' << r.cluster << ',' << r.k << ',' << r.p << ','
            << format_double(r.rho_a) << ',' << r.v << ','
            << (r.icvi_value ? format_double(*r.icvi_value) : "");
        if (ari_so_far) out << ',' << format_double((*ari_so_far)[i]);
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

} // namespace icvistream
