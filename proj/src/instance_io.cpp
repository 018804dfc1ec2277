#include "caploc/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace caploc {

std::string serialize(const Instance& inst) {
  std::ostringstream out;
  out << "caploc v1\n";
  out << "n " << inst.num_facilities() << " m " << inst.num_clients() << " k ";
  if (inst.k()) {
    out << *inst.k();
  } else {
    out << "-";
  }
  out << '\n';
  for (int i = 0; i < inst.num_facilities(); ++i) {
    out << "facility " << i << " cap " << inst.facility(i).capacity << " open "
        << to_string(inst.facility(i).opening_cost) << '\n';
  }
  for (int j = 0; j < inst.num_clients(); ++j) {
    out << "client " << j << " demand " << inst.client(j).demand << '\n';
  }
  out << "metric\n";
  const int sites = inst.num_sites();
  for (int a = 0; a < sites; ++a) {
    for (int b = 0; b < sites; ++b) {
      if (b > 0) out << ' ';
      out << to_string(inst.distance(a, b));
    }
    out << '\n';
  }
  return out.str();
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::int64_t parse_int(const Line& line, const std::string& tok) {
  try {
    size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected an integer, got '" + tok + "'");
  }
}

void expect(const Line& line, size_t index, const char* keyword) {
  if (line.tokens.size() <= index || line.tokens[index] != keyword) {
    throw ParseError(line.number, std::string("expected '") + keyword + "'");
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  size_t cursor = 0;
  auto next = [&](const char* what) -> const Line& {
    if (cursor >= lines.size()) {
      const int last = lines.empty() ? 1 : lines.back().number;
      throw ParseError(last, std::string("unexpected end of input, expected ") + what);
    }
    return lines[cursor++];
  };

  const Line& magic = next("header");
  if (magic.tokens != std::vector<std::string>{"caploc", "v1"}) {
    throw ParseError(magic.number, "expected 'caploc v1'");
  }
  const Line& sizes = next("sizes");
  if (sizes.tokens.size() != 6) throw ParseError(sizes.number, "expected 'n <n> m <m> k <k|->'");
  expect(sizes, 0, "n");
  expect(sizes, 2, "m");
  expect(sizes, 4, "k");
  const std::int64_t n = parse_int(sizes, sizes.tokens[1]);
  const std::int64_t m = parse_int(sizes, sizes.tokens[3]);
  if (n <= 0 || m <= 0) throw ParseError(sizes.number, "n and m must be positive");
  std::optional<int> k;
  if (sizes.tokens[5] != "-") {
    const std::int64_t kv = parse_int(sizes, sizes.tokens[5]);
    if (kv <= 0) throw ParseError(sizes.number, "k must be positive");
    k = static_cast<int>(kv);
  }

  std::vector<Facility> facilities(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const Line& line = next("facility line");
    if (line.tokens.size() != 6) throw ParseError(line.number, "expected 'facility <i> cap <s> open <f>'");
    expect(line, 0, "facility");
    expect(line, 2, "cap");
    expect(line, 4, "open");
    if (parse_int(line, line.tokens[1]) != i) {
      throw ParseError(line.number, "facility index out of order, expected " + std::to_string(i));
    }
    facilities[i].capacity = parse_int(line, line.tokens[3]);
    try {
      facilities[i].opening_cost = parse_rational(line.tokens[5]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
  }
  std::vector<Client> clients(m);
  for (std::int64_t j = 0; j < m; ++j) {
    const Line& line = next("client line");
    if (line.tokens.size() != 4) throw ParseError(line.number, "expected 'client <j> demand <d>'");
    expect(line, 0, "client");
    expect(line, 2, "demand");
    if (parse_int(line, line.tokens[1]) != j) {
      throw ParseError(line.number, "client index out of order, expected " + std::to_string(j));
    }
    clients[j].demand = parse_int(line, line.tokens[3]);
  }
  const Line& metric_header = next("'metric'");
  if (metric_header.tokens != std::vector<std::string>{"metric"}) {
    throw ParseError(metric_header.number, "expected 'metric'");
  }
  const std::int64_t sites = n + m;
  std::vector<Rational> metric;
  metric.reserve(sites * sites);
  for (std::int64_t a = 0; a < sites; ++a) {
    const Line& row = next("metric row");
    if (static_cast<std::int64_t>(row.tokens.size()) != sites) {
      throw ParseError(row.number, "metric row has " + std::to_string(row.tokens.size()) +
                                       " entries, expected " + std::to_string(sites));
    }
    for (const auto& tok : row.tokens) {
      try {
        metric.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(row.number, e.what());
      }
    }
  }
  if (cursor != lines.size()) throw ParseError(lines[cursor].number, "trailing content");
  return Instance(std::move(facilities), std::move(clients), std::move(metric), k);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void write_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize(inst);
}

std::string digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace caploc
