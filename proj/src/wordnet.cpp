#include "scigis/wordnet.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "scigis/error.hpp"
#include "text_util.hpp"

namespace scigis {

namespace {

std::size_t slot(SynsetPos pos) { return pos == SynsetPos::Noun ? 0 : 1; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename T>
bool parse_number(std::string_view text, T& out, int base = 10) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out, base);
  return ec == std::errc() && ptr == end;
}

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  // Yields the next line and its byte offset; false at end of input.
  bool next(std::string_view& line, std::size_t& offset) {
    if (pos >= text.size()) return false;
    offset = pos;
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    return true;
  }
};

bool is_header_or_blank(std::string_view line) {
  return line.starts_with("  ") || detail::trim(line).empty();
}

void parse_data_file(const std::filesystem::path& path, SynsetPos pos, WordNetDb::Builder& builder) {
  const std::string content = read_file(path);
  const std::string source = path.string();
  LineCursor cursor{content};
  std::string_view line;
  std::size_t offset = 0;
  while (cursor.next(line, offset)) {
    if (is_header_or_blank(line)) continue;
    const auto bar = line.find('|');
    const auto fields = detail::split_ws(line.substr(0, bar));
    auto fail = [&](const std::string& what) -> void {
      throw ParseError(source, cursor.line_no, what);
    };
    if (fields.size() < 4) fail("truncated synset line");

    std::uint32_t declared = 0;
    if (!parse_number(fields[0], declared)) fail(fmt::format("bad synset offset '{}'", fields[0]));
    if (declared != offset) {
      fail(fmt::format("synset offset {} does not match byte offset {}", declared, offset));
    }
    const char ss_type = fields[2].size() == 1 ? fields[2][0] : '?';
    if (ss_type != static_cast<char>(pos)) {
      fail(fmt::format("synset type '{}' in {} file", fields[2], static_cast<char>(pos)));
    }

    Synset synset;
    synset.id = {declared, pos};
    std::size_t word_count = 0;
    if (!parse_number(fields[3], word_count, 16)) fail("bad word count");
    std::size_t i = 4;
    if (fields.size() < i + 2 * word_count + 1) fail("truncated word list");
    for (std::size_t w = 0; w < word_count; ++w, i += 2) {
      synset.lemmas.push_back(detail::to_lower_ascii(fields[i]));
    }
    std::size_t pointer_count = 0;
    if (!parse_number(fields[i], pointer_count)) fail("bad pointer count");
    ++i;
    if (fields.size() < i + 4 * pointer_count) fail("truncated pointer list");
    for (std::size_t p = 0; p < pointer_count; ++p, i += 4) {
      const auto symbol = fields[i];
      if (symbol != "@" && symbol != "@i") continue;
      std::uint32_t target = 0;
      if (!parse_number(fields[i + 1], target)) fail("bad pointer offset");
      const auto target_pos = fields[i + 2];
      if (target_pos.size() != 1 || target_pos[0] != static_cast<char>(pos)) {
        fail(fmt::format("hypernym pointer to pos '{}'", target_pos));
      }
      synset.hypernyms.push_back({target, pos});
    }
    builder.add_synset(std::move(synset));
  }
}

void parse_index_file(const std::filesystem::path& path, SynsetPos pos, WordNetDb::Builder& builder) {
  const std::string content = read_file(path);
  const std::string source = path.string();
  LineCursor cursor{content};
  std::string_view line;
  std::size_t offset = 0;
  while (cursor.next(line, offset)) {
    if (is_header_or_blank(line)) continue;
    const auto fields = detail::split_ws(line);
    auto fail = [&](const std::string& what) -> void {
      throw ParseError(source, cursor.line_no, what);
    };
    if (fields.size() < 4) fail("truncated index line");
    if (fields[1].size() != 1 || fields[1][0] != static_cast<char>(pos)) {
      fail(fmt::format("index pos '{}' in {} file", fields[1], static_cast<char>(pos)));
    }
    std::size_t synset_count = 0;
    std::size_t pointer_count = 0;
    if (!parse_number(fields[2], synset_count) || !parse_number(fields[3], pointer_count)) {
      fail("bad index counts");
    }
    const std::size_t first = 4 + pointer_count + 2;
    if (fields.size() != first + synset_count) fail("index line field count mismatch");
    std::vector<SynsetId> ids;
    for (std::size_t i = first; i < fields.size(); ++i) {
      std::uint32_t off = 0;
      if (!parse_number(fields[i], off)) fail(fmt::format("bad synset offset '{}'", fields[i]));
      ids.push_back({off, pos});
    }
    builder.add_index_entry(detail::to_lower_ascii(fields[0]), pos, std::move(ids));
  }
}

}  // namespace

std::string SynsetId::str() const {
  return fmt::format("{:08d}{}", offset, static_cast<char>(pos));
}

WordNetDb::Builder& WordNetDb::Builder::add_synset(Synset synset) {
  const auto id = synset.id;
  synsets_.insert_or_assign(id, std::move(synset));
  return *this;
}

WordNetDb::Builder& WordNetDb::Builder::add_index_entry(std::string lemma, SynsetPos pos,
                                                        std::vector<SynsetId> synsets) {
  index_[slot(pos)].insert_or_assign(std::move(lemma), std::move(synsets));
  return *this;
}

WordNetDb WordNetDb::Builder::build(const std::string& source) && {
  for (const auto& [id, synset] : synsets_) {
    for (const auto& h : synset.hypernyms) {
      if (h.pos != id.pos || !synsets_.contains(h)) {
        throw ParseError(source, 0,
                         fmt::format("synset {} points to missing hypernym {}", id.str(), h.str()));
      }
    }
  }
  for (const auto& table : index_) {
    for (const auto& [lemma, ids] : table) {
      for (const auto& id : ids) {
        if (!synsets_.contains(id)) {
          throw ParseError(source, 0,
                           fmt::format("index entry '{}' references missing synset {}", lemma, id.str()));
        }
      }
    }
  }

  // Iterative three-colour DFS over hypernym edges.
  enum class Mark { White, Grey, Black };
  std::map<SynsetId, Mark> marks;
  for (const auto& [start, unused] : synsets_) {
    if (marks[start] != Mark::White) continue;
    std::vector<std::pair<SynsetId, std::size_t>> stack{{start, 0}};
    marks[start] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& hypernyms = synsets_.at(node).hypernyms;
      if (next == hypernyms.size()) {
        marks[node] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const SynsetId h = hypernyms[next++];
      auto& mark = marks[h];
      if (mark == Mark::Grey) {
        throw ParseError(source, 0, fmt::format("hypernym cycle through synset {}", h.str()));
      }
      if (mark == Mark::White) {
        mark = Mark::Grey;
        stack.emplace_back(h, 0);
      }
    }
  }

  WordNetDb db;
  db.synsets_ = std::move(synsets_);
  db.index_[0] = std::move(index_[0]);
  db.index_[1] = std::move(index_[1]);
  return db;
}

const Synset* WordNetDb::find(SynsetId id) const {
  const auto it = synsets_.find(id);
  return it == synsets_.end() ? nullptr : &it->second;
}

const Synset& WordNetDb::at(SynsetId id) const {
  const auto* synset = find(id);
  if (synset == nullptr) throw Error(fmt::format("unknown synset {}", id.str()));
  return *synset;
}

std::span<const SynsetId> WordNetDb::lookup(std::string_view lemma, SynsetPos pos) const {
  const auto& table = index_[slot(pos)];
  const auto it = table.find(std::string(lemma));
  if (it == table.end()) return {};
  return it->second;
}

WordNetDb parse_wordnet_db(const std::filesystem::path& directory) {
  WordNetDb::Builder builder;
  parse_data_file(directory / "data.noun", SynsetPos::Noun, builder);
  parse_data_file(directory / "data.verb", SynsetPos::Verb, builder);
  parse_index_file(directory / "index.noun", SynsetPos::Noun, builder);
  parse_index_file(directory / "index.verb", SynsetPos::Verb, builder);
  return std::move(builder).build(directory.string());
}

std::vector<HypernymPath> hypernym_paths(const WordNetDb& db, SynsetId id) {
  std::vector<HypernymPath> paths;
  HypernymPath current;
  auto walk = [&](auto&& self, SynsetId node) -> void {
    current.push_back(node);
    const auto& hypernyms = db.at(node).hypernyms;
    if (hypernyms.empty()) {
      paths.push_back(current);
    } else {
      for (const auto& h : hypernyms) self(self, h);
    }
    current.pop_back();
  };
  walk(walk, id);
  std::sort(paths.begin(), paths.end(), [](const HypernymPath& a, const HypernymPath& b) {
    if (a.back().offset != b.back().offset) return a.back().offset < b.back().offset;
    return a < b;
  });
  return paths;
}

std::string hypernym_edge_list(const WordNetDb& db) {
  std::string out;
  for (const auto& [id, synset] : db.synsets()) {
    for (const auto& h : synset.hypernyms) {
      out += id.str();
      out += ' ';
      out += h.str();
      out += '\n';
    }
  }
  return out;
}

HypernymIndex::HypernymIndex(const WordNetDb& db) {
  auto compute = [&](auto&& self, SynsetId id) -> const PathSummary& {
    if (const auto it = summaries_.find(id); it != summaries_.end()) return it->second;
    PathSummary summary;
    const auto& hypernyms = db.at(id).hypernyms;
    if (hypernyms.empty()) {
      summary = {1.0, 1.0, 1, id};
    } else {
      double total_length = 0;
      for (const auto& h : hypernyms) {
        const PathSummary parent = self(self, h);
        summary.path_count += parent.path_count;
        total_length += (parent.mean_length + 1.0) * parent.path_count;
        const std::size_t length = parent.longest + 1;
        if (length > summary.longest ||
            (length == summary.longest && summary.longest_root < parent.longest_root)) {
          summary.longest = length;
          summary.longest_root = parent.longest_root;
        }
      }
      summary.mean_length = total_length / summary.path_count;
    }
    return summaries_.emplace(id, summary).first->second;
  };
  for (const auto& [id, unused] : db.synsets()) {
    const auto& summary = compute(compute, id);
    auto& scale = root_scale_[summary.longest_root];
    scale = std::max(scale, summary.longest);
  }
}

const HypernymIndex::PathSummary& HypernymIndex::summary(SynsetId id) const {
  const auto it = summaries_.find(id);
  if (it == summaries_.end()) throw Error(fmt::format("unknown synset {}", id.str()));
  return it->second;
}

std::size_t HypernymIndex::root_scale(SynsetId root) const {
  const auto it = root_scale_.find(root);
  return it == root_scale_.end() ? 0 : it->second;
}

}  // namespace scigis
