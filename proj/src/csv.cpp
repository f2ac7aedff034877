#include "ratecast/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

namespace ratecast::csvio {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) {
    return false;
  }
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_index(const std::string& cell, std::size_t& out) {
  if (cell.empty()) {
    return false;
  }
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::vector<std::string>> read_rows(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      continue;
    }
    rows.push_back(split_line(line));
  }
  return rows;
}

bool is_header_row(const std::vector<std::string>& row) {
  double value = 0.0;
  for (const std::string& cell : row) {
    if (parse_double(cell, value)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TimeSeries read_series(const std::filesystem::path& path,
                       const std::string& column, std::size_t frequency) {
  const auto rows = read_rows(path);
  if (rows.empty()) {
    throw ParseError(path.string() + ": no rows");
  }
  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (is_header_row(rows[0])) {
    header = rows[0];
    first_data = 1;
  }
  if (first_data >= rows.size()) {
    throw ParseError(path.string() + ": no data rows");
  }

  const std::vector<std::string>& probe = rows[first_data];
  std::size_t col = probe.size();
  if (column.empty()) {
    for (std::size_t k = probe.size(); k-- > 0;) {
      double value = 0.0;
      if (parse_double(probe[k], value)) {
        col = k;
        break;
      }
    }
    if (col == probe.size()) {
      throw ParseError(path.string() +
                       ": no numeric column in the first data row");
    }
  } else {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == column) {
        col = k;
        break;
      }
    }
    if (col == probe.size()) {
      std::size_t index = 0;
      if (parse_index(column, index) && index >= 1 && index <= probe.size()) {
        col = index - 1;
      } else {
        throw ParseError(path.string() + ": unknown column '" + column + "'");
      }
    }
  }

  std::vector<double> values;
  values.reserve(rows.size() - first_data);
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    if (col >= rows[r].size()) {
      throw ParseError(path.string() + ": row " + std::to_string(r + 1) +
                       " has only " + std::to_string(rows[r].size()) +
                       " columns");
    }
    double value = 0.0;
    if (!parse_double(rows[r][col], value)) {
      throw ParseError(path.string() + ": row " + std::to_string(r + 1) +
                       ": '" + rows[r][col] + "' is not a number");
    }
    values.push_back(value);
  }
  try {
    return TimeSeries(std::move(values), frequency);
  } catch (const Error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

OhlcBatch read_ohlc_batch(const std::vector<std::filesystem::path>& files) {
  if (files.empty()) {
    throw EmptyBatch("no input files");
  }

  struct Row {
    std::string date;
    OhlcBar bar;
  };
  std::map<std::string, std::vector<Row>> by_ticker;

  for (const std::filesystem::path& file : files) {
    const auto rows = read_rows(file);
    if (rows.empty()) {
      throw ParseError(file.string() + ": no rows");
    }
    const std::vector<std::string>& head = rows[0];
    if (!is_header_row(head)) {
      throw ParseError(file.string() +
                       ": missing header (need date,open,high,low,close)");
    }
    const auto find_column =
        [&head](std::initializer_list<const char*> names) -> std::ptrdiff_t {
      for (std::size_t k = 0; k < head.size(); ++k) {
        const std::string cell = lower(head[k]);
        for (const char* name : names) {
          if (cell == name) {
            return static_cast<std::ptrdiff_t>(k);
          }
        }
      }
      return -1;
    };
    const std::ptrdiff_t date_col = find_column({"date"});
    const std::ptrdiff_t open_col = find_column({"open"});
    const std::ptrdiff_t high_col = find_column({"high"});
    const std::ptrdiff_t low_col = find_column({"low"});
    const std::ptrdiff_t close_col = find_column({"close"});
    const std::ptrdiff_t name_col = find_column({"name", "ticker", "symbol"});
    if (date_col < 0 || open_col < 0 || high_col < 0 || low_col < 0 ||
        close_col < 0) {
      throw ParseError(file.string() +
                       ": header must name date, open, high, low and close");
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const std::vector<std::string>& row = rows[r];
      const auto cell = [&](std::ptrdiff_t k) -> const std::string& {
        if (k < 0 || static_cast<std::size_t>(k) >= row.size()) {
          throw ParseError(file.string() + ": row " + std::to_string(r + 1) +
                           " has only " + std::to_string(row.size()) +
                           " columns");
        }
        return row[static_cast<std::size_t>(k)];
      };
      const auto price = [&](std::ptrdiff_t k) {
        double value = 0.0;
        if (!parse_double(cell(k), value)) {
          throw ParseError(file.string() + ": row " + std::to_string(r + 1) +
                           ": '" + cell(k) + "' is not a number");
        }
        return value;
      };
      Row parsed;
      parsed.date = cell(date_col);
      parsed.bar.open = price(open_col);
      parsed.bar.high = price(high_col);
      parsed.bar.low = price(low_col);
      parsed.bar.close = price(close_col);
      const std::string ticker =
          name_col >= 0 ? cell(name_col) : file.stem().string();
      if (ticker.empty()) {
        throw ParseError(file.string() + ": row " + std::to_string(r + 1) +
                         ": empty ticker name");
      }
      by_ticker[ticker].push_back(std::move(parsed));
    }
  }

  std::set<std::string> calendar;
  for (const auto& [ticker, rows] : by_ticker) {
    (void)ticker;
    for (const Row& row : rows) {
      calendar.insert(row.date);
    }
  }

  OhlcBatch batch;
  for (auto& [ticker, rows] : by_ticker) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    std::string reason;
    for (std::size_t k = 0; k + 1 < rows.size() && reason.empty(); ++k) {
      if (rows[k].date == rows[k + 1].date) {
        reason = "duplicate date " + rows[k].date;
      }
    }
    if (reason.empty() && rows.size() != calendar.size()) {
      reason = "incomplete history (" + std::to_string(rows.size()) + " of " +
               std::to_string(calendar.size()) + " trading dates)";
    }
    if (reason.empty()) {
      for (const Row& row : rows) {
        const auto bad = [](double v) { return !(v > 0.0) || !std::isfinite(v); };
        if (bad(row.bar.open) || bad(row.bar.high) || bad(row.bar.low) ||
            bad(row.bar.close)) {
          reason = "non-positive or non-finite price on " + row.date;
          break;
        }
        if (row.bar.low > row.bar.high) {
          reason = "low above high on " + row.date;
          break;
        }
      }
    }
    if (!reason.empty()) {
      batch.rejected.push_back({ticker, reason});
      continue;
    }
    OhlcSeries series;
    series.ticker = ticker;
    series.dates.reserve(rows.size());
    series.bars.reserve(rows.size());
    for (const Row& row : rows) {
      series.dates.push_back(row.date);
      series.bars.push_back(row.bar);
    }
    batch.accepted.push_back(std::move(series));
  }
  return batch;
}

std::vector<std::pair<std::size_t, double>> read_baseline(
    const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.empty()) {
    throw ParseError(path.string() + ": no rows");
  }
  const std::size_t first_data = is_header_row(rows[0]) ? 1 : 0;
  if (first_data >= rows.size()) {
    throw ParseError(path.string() + ": no data rows");
  }
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(rows.size() - first_data);
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const std::vector<std::string>& row = rows[r];
    if (row.size() < 2) {
      throw ParseError(path.string() + ": row " + std::to_string(r + 1) +
                       " needs two columns (target index, forecast)");
    }
    std::size_t index = 0;
    if (!parse_index(row[0], index) || index < 1) {
      throw ParseError(path.string() + ": row " + std::to_string(r + 1) +
                       ": '" + row[0] + "' is not a positive index");
    }
    double value = 0.0;
    if (!parse_double(row[1], value)) {
      throw ParseError(path.string() + ": row " + std::to_string(r + 1) +
                       ": '" + row[1] + "' is not a number");
    }
    out.emplace_back(index, value);
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code cleanup;
    std::filesystem::remove(tmp, cleanup);
    throw IoError("cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace ratecast::csvio
