#include <tepred/ingest.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace tep::ingest {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "NA" || cell == "NaN" || cell == "."; }

std::optional<double> parse_number(const std::string& cell) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

} // namespace

std::vector<std::string> split_record(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    require(!quoted, ErrorKind::Parse, "line " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(trim(cur));
    return fields;
}

LoadedPopulation load(std::istream& in, const PopulationFile& spec, const std::string& source) {
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (!have_header && std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        have_header = !trim(line).empty();
    }
    require(have_header, ErrorKind::Schema, source + ": missing header row");
    const std::vector<std::string> header = split_record(line, line_no);

    auto find_column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        require(it != header.end(), ErrorKind::Schema, source + ": column '" + name + "' not found");
        return static_cast<std::size_t>(it - header.begin());
    };

    std::optional<std::size_t> id_idx;
    if (spec.id_column) {
        id_idx = find_column(*spec.id_column);
    }
    LoadedPopulation out;
    std::vector<std::size_t> cols;
    if (spec.covariate_columns.empty()) {
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (!id_idx || k != *id_idx) {
                cols.push_back(k);
                out.columns.push_back(header[k]);
            }
        }
    } else {
        for (const std::string& name : spec.covariate_columns) {
            cols.push_back(find_column(name));
            out.columns.push_back(name);
        }
    }
    require(!cols.empty(), ErrorKind::Schema, source + ": no covariate columns");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_record(line, line_no);
        require(fields.size() == header.size(), ErrorKind::Parse,
                source + ": line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                    " fields, header has " + std::to_string(header.size()));
        ++out.rows_read;

        std::vector<double> values;
        values.reserve(cols.size());
        bool drop = false;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::string& cell = fields[cols[c]];
            const std::string where =
                source + ": line " + std::to_string(line_no) + ", column '" + out.columns[c] + "'";
            if (is_missing(cell)) {
                require(spec.row_policy == RowPolicy::DropMissing, ErrorKind::Parse, where + ": missing value");
                drop = true;
                break;
            }
            const std::optional<double> v = parse_number(cell);
            require(v.has_value(), ErrorKind::Parse, where + ": '" + cell + "' is not a finite number");
            values.push_back(*v);
        }
        if (drop) {
            ++out.rows_dropped;
            continue;
        }
        rows.push_back(std::move(values));
        out.ids.push_back(id_idx ? fields[*id_idx] : std::to_string(out.rows_read));
    }

    require(rows.size() >= 2, ErrorKind::InsufficientData,
            source + ": " + std::to_string(rows.size()) + " usable rows, need at least 2");
    out.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return out;
}

LoadedPopulation load(const PopulationFile& spec) {
    std::ifstream in(spec.path);
    require(in.good(), ErrorKind::Schema, spec.path + ": cannot open file");
    return load(in, spec, spec.path);
}

void write_weights(std::ostream& out, const std::vector<std::string>& ids, const Vector& w) {
    require(ids.size() == static_cast<std::size_t>(w.size()), ErrorKind::DimensionMismatch,
            "id list and weight vector differ in length");
    out << "id,weight\n";
    out.precision(17);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const bool quote = ids[i].find_first_of(",\"") != std::string::npos;
        if (quote) {
            std::string escaped;
            for (char c : ids[i]) {
                escaped += c == '"' ? std::string("\"\"") : std::string(1, c);
            }
            out << '"' << escaped << '"';
        } else {
            out << ids[i];
        }
        out << ',' << w(static_cast<Eigen::Index>(i)) << '\n';
    }
}

} // namespace tep::ingest
