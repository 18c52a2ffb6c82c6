#include "wisard/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wisard/text_io.hpp"

namespace wisard {
namespace {

constexpr std::string_view kMagic = "wisard-model";

using Kind = ModelFileError::Kind;

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(std::string_view expecting) {
    std::string line;
    if (!std::getline(in_, line))
      throw ModelFileError(Kind::Truncated, "model file ends early, expected " +
                                                std::string(expecting));
    ++line_no_;
    if (in_.eof())
      throw ModelFileError(Kind::Truncated, "model file line " + std::to_string(line_no_) +
                                                " is not terminated");
    return line;
  }

  /// Reads "key value" and returns value.
  std::string field(std::string_view key) {
    const std::string line = next(key);
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos || std::string_view(line).substr(0, sp) != key)
      fail("expected field '" + std::string(key) + "'");
    return line.substr(sp + 1);
  }

  template <typename T>
  T number(std::string_view key) {
    const std::string value = field(key);
    const auto parsed = text::parse_number<T>(value);
    if (!parsed) fail("bad value for '" + std::string(key) + "': " + value);
    return *parsed;
  }

  [[noreturn]] void fail(const std::string& what, Kind kind = Kind::Malformed) const {
    throw ModelFileError(kind, "model file line " + std::to_string(line_no_) + ": " + what);
  }

private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

void save_model(const WisardModel& model, std::ostream& out) {
  const WisardConfig& cfg = model.config();
  out << kMagic << '\n'
      << "format_version " << kModelFormatVersion << '\n'
      << "n " << cfg.n << '\n'
      << "seed " << cfg.seed << '\n'
      << "mapping_kind " << to_string(cfg.mapping_kind) << '\n'
      << "decision_mode " << to_string(cfg.decision_mode) << '\n'
      << "threshold_fraction " << text::format_double(cfg.threshold_fraction) << '\n'
      << "input_bits " << model.input_bits() << '\n'
      << "L " << model.retina_length() << '\n'
      << "K " << model.k() << '\n'
      << "tuples\n";
  for (const auto& tuple : model.mapping().tuples()) {
    for (std::size_t i = 0; i < tuple.size(); ++i) out << (i ? " " : "") << tuple[i];
    out << '\n';
  }
  out << "classes " << model.discriminators().size() << '\n';
  for (const auto& [label, d] : model.discriminators()) {
    out << "class " << label << " trained " << d.trained_count << '\n';
    for (const RamNeuron& ram : d.rams) {
      bool first = true;
      for (const auto& [addr, count] : ram.contents()) {
        out << (first ? "" : " ") << addr << ':' << count;
        first = false;
      }
      out << '\n';
    }
  }
  out << "end\n";
}

std::string save_model(const WisardModel& model) {
  std::ostringstream out;
  save_model(model, out);
  return out.str();
}

WisardModel load_model(std::istream& in) {
  LineReader r(in);
  if (r.next("header") != kMagic) r.fail("not a wisard model file");
  const std::string version = r.field("format_version");
  if (version != std::to_string(kModelFormatVersion))
    throw ModelFileError(Kind::Version, "unsupported model format version '" + version + "'");

  WisardConfig cfg;
  cfg.n = r.number<std::size_t>("n");
  cfg.seed = r.number<std::uint64_t>("seed");
  try {
    cfg.mapping_kind = parse_mapping_kind(r.field("mapping_kind"));
    cfg.decision_mode = parse_decision_mode(r.field("decision_mode"));
  } catch (const ConfigError& e) {
    r.fail(e.what());
  }
  cfg.threshold_fraction = r.number<double>("threshold_fraction");
  const auto input_bits = r.number<std::size_t>("input_bits");
  const auto length = r.number<std::size_t>("L");
  const auto k = r.number<std::size_t>("K");
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    r.fail(e.what(), Kind::Invariant);
  }
  if (length == 0 || length % cfg.n != 0 || k != length / cfg.n)
    r.fail("L and K are inconsistent with n", Kind::Invariant);

  if (r.next("tuples") != "tuples") r.fail("expected 'tuples'");
  std::vector<std::vector<std::size_t>> tuples(k);
  for (auto& tuple : tuples) {
    const std::string line = r.next("tuple");
    for (std::string_view tok : text::split(line, ' ')) {
      const auto idx = text::parse_number<std::size_t>(tok);
      if (!idx) r.fail("bad tuple index '" + std::string(tok) + "'");
      tuple.push_back(*idx);
    }
  }

  std::optional<WisardModel> model;
  try {
    model.emplace(cfg, TupleMapping(length, cfg.n, std::move(tuples)), input_bits);
  } catch (const ConfigError& e) {
    r.fail(e.what(), Kind::Invariant);
  }

  const auto classes = r.number<std::size_t>("classes");
  const std::uint64_t address_limit = std::uint64_t{1} << cfg.n;
  for (std::size_t c = 0; c < classes; ++c) {
    const std::string header = r.next("class header");
    const auto parts = text::split(header, ' ');
    if (parts.size() != 4 || parts[0] != "class" || parts[2] != "trained")
      r.fail("expected 'class <label> trained <count>'");
    const auto label = text::parse_number<Label>(parts[1]);
    const auto trained = text::parse_number<std::size_t>(parts[3]);
    if (!label || !trained) r.fail("bad class header");
    if (*label < 0) r.fail("negative class label", Kind::Invariant);
    if (model->discriminators().contains(*label)) r.fail("duplicate class", Kind::Invariant);
    Discriminator& d = model->discriminator(*label);
    d.trained_count = *trained;
    for (std::size_t ram = 0; ram < k; ++ram) {
      const std::string line = r.next("RAM contents");
      if (line.empty()) continue;
      std::optional<std::uint64_t> previous;
      for (std::string_view tok : text::split(line, ' ')) {
        const std::size_t colon = tok.find(':');
        if (colon == std::string_view::npos) r.fail("expected address:count");
        const auto addr = text::parse_number<std::uint64_t>(tok.substr(0, colon));
        const auto count = text::parse_number<std::uint32_t>(tok.substr(colon + 1));
        if (!addr || !count) r.fail("bad RAM entry '" + std::string(tok) + "'");
        if (*addr >= address_limit) r.fail("RAM address out of range", Kind::Invariant);
        if (*count == 0) r.fail("RAM count must be positive", Kind::Invariant);
        if (previous && *addr <= *previous)
          r.fail("RAM addresses not strictly ascending", Kind::Invariant);
        previous = addr;
        d.rams[ram].set(*addr, *count);
      }
    }
  }
  if (r.next("end") != "end") r.fail("expected 'end'");
  return std::move(*model);
}

WisardModel load_model_string(const std::string& text) {
  std::istringstream in(text);
  return load_model(in);
}

void save_model_file(const WisardModel& model, const std::filesystem::path& path) {
  try {
    text::write_file_atomic(path, save_model(model));
  } catch (const std::runtime_error& e) {
    throw ModelFileError(Kind::Io, e.what());
  }
}

WisardModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFileError(Kind::Io, "cannot open model file " + path.string());
  return load_model(in);
}

}  // namespace wisard
