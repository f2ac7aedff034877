#pragma once

/**
 * CSV ingestion and atomic text output.
 *
 * All readers throw csvio::IoError for missing/unreadable files and
 * csvio::ParseError for malformed content; both derive from ratecast::Error
 * but are reported differently by the CLI (I/O and parse problems are usage
 * errors, not math errors).
 */

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ratecast/errors.hpp"
#include "ratecast/series.hpp"
#include "ratecast/stockscore.hpp"

namespace ratecast::csvio {

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/**
 * Read a univariate series from a CSV file.
 *
 * A header row is auto-detected (first row whose chosen cell does not parse
 * as a number).  `column` selects the value column: empty picks the LAST
 * column of the first data row that parses as a number (so a leading date
 * or index column is skipped), otherwise it is matched against header names
 * first and then parsed as a 1-based column index.  Every data row must
 * supply a numeric value in the chosen column.
 */
TimeSeries read_series(const std::filesystem::path& path,
                       const std::string& column = "",
                       std::size_t frequency = 1);

/// Why a ticker was dropped during batch ingestion.
struct RejectedTicker {
  std::string ticker;
  std::string reason;
};

struct OhlcBatch {
  std::vector<OhlcSeries> accepted;   ///< sorted by ticker
  std::vector<RejectedTicker> rejected;
};

/**
 * Read daily bars for one or many stocks.
 *
 * Each file needs a header naming (case-insensitively) date, open, high,
 * low, close; an optional name/ticker column splits a single file into many
 * stocks, otherwise the file stem is the ticker.  Rows are sorted by date.
 *
 * Tickers are validated independently and dropped (with a reason) rather
 * than failing the batch when they have non-positive, non-finite or
 * low > high prices, duplicate dates, or an incomplete calendar (the
 * calendar is the union of all tickers' dates).  A batch where every ticker
 * was dropped is returned as-is (empty `accepted`) so callers can report the
 * reasons; an empty `files` list throws EmptyBatch.
 */
OhlcBatch read_ohlc_batch(const std::vector<std::filesystem::path>& files);

/**
 * Read an externally produced forecast sequence: two columns
 * (1-based target index, forecast value), optional header.
 */
std::vector<std::pair<std::size_t, double>> read_baseline(
    const std::filesystem::path& path);

/**
 * Write a file atomically: the content lands under a temporary name in the
 * target directory and is renamed into place, so readers never observe a
 * half-written file.
 */
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace ratecast::csvio
