#include "ctsearch/index/persist.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "ctsearch/corpus/metadata.hpp"
#include "ctsearch/error.hpp"
#include "ctsearch/text/sha256.hpp"

namespace ctsearch::index {

namespace {

constexpr std::string_view kMagic = "CTSINDEX";
constexpr std::size_t kHeaderSize = 12;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void raw(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    return v;
  }
  std::string str() { return std::string(bytes(u32())); }
  std::string_view bytes(std::uint64_t n) {
    need(n);
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  // Element counts are bounded by the remaining bytes to reject absurd sizes early.
  std::uint32_t count(std::size_t min_element_size) {
    std::uint32_t n = u32();
    if (min_element_size > 0 && n > remaining() / min_element_size) corrupt("element count exceeds file size");
    return n;
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

  [[noreturn]] static void corrupt(const std::string& what) {
    throw Error(ErrorCode::kCorruptFile, "corrupt index file: " + what);
  }

 private:
  void need(std::uint64_t n) const {
    if (n > data_.size() - pos_) corrupt("unexpected end of data");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

std::string encode_payload(const LemmaIndex& index, const SentenceStore& store) {
  Writer w;
  const auto& docs = store.documents();
  w.u32(static_cast<std::uint32_t>(docs.size()));
  for (const auto& d : docs) {
    w.str(corpus::metadata_to_json(d.metadata).dump());
    w.u32(static_cast<std::uint32_t>(d.sentences.size()));
    for (const auto& s : d.sentences) {
      w.str(s.sent_id);
      w.str(s.text);
      w.u32(static_cast<std::uint32_t>(s.tokens.size()));
      for (const auto& t : s.tokens) {
        w.str(t.form);
        w.str(t.lemma);
        w.str(t.key);
        w.str(t.upos);
        w.u32(t.span.begin);
        w.u32(t.span.end);
      }
    }
  }
  w.u32(static_cast<std::uint32_t>(index.postings().size()));
  for (const auto& [key, list] : index.postings()) {
    w.str(key);
    w.u32(static_cast<std::uint32_t>(list.size()));
    for (const auto& p : list) {
      w.u32(p.doc);
      w.u32(p.sentence);
      w.u32(p.token);
    }
  }
  w.u32(static_cast<std::uint32_t>(index.surface_to_lemma().size()));
  for (const auto& [surface, lemma] : index.surface_to_lemma()) {
    w.str(surface);
    w.str(lemma);
  }
  return w.take();
}

IndexedCorpus decode_payload(std::string_view payload, IndexManifest manifest) {
  Reader r(payload);
  std::vector<StoredDocument> docs(r.count(8));
  for (auto& d : docs) {
    try {
      d.metadata = corpus::metadata_from_json(nlohmann::json::parse(r.str()));
    } catch (const nlohmann::json::exception& e) {
      Reader::corrupt(std::string("document metadata: ") + e.what());
    } catch (const Error& e) {
      Reader::corrupt(std::string("document metadata: ") + e.what());
    }
    d.sentences.resize(r.count(12));
    for (auto& s : d.sentences) {
      s.sent_id = r.str();
      s.text = r.str();
      s.tokens.resize(r.count(24));
      for (auto& t : s.tokens) {
        t.form = r.str();
        t.lemma = r.str();
        t.key = r.str();
        t.upos = r.str();
        t.span.begin = r.u32();
        t.span.end = r.u32();
        if (t.span.begin > t.span.end || t.span.end > s.text.size()) Reader::corrupt("token span out of range");
      }
    }
  }
  for (std::size_t i = 1; i < docs.size(); ++i) {
    const auto& a = docs[i - 1].metadata;
    const auto& b = docs[i].metadata;
    if (!(a.corpus < b.corpus || (a.corpus == b.corpus && a.doc_id < b.doc_id))) {
      Reader::corrupt("documents not strictly ordered by (corpus, doc_id)");
    }
  }
  SentenceStore store(std::move(docs));

  LemmaIndex::PostingMap postings;
  std::size_t total = 0;
  const std::uint32_t lemma_count = r.count(8);
  for (std::uint32_t i = 0; i < lemma_count; ++i) {
    std::string key = r.str();
    std::vector<Posting> list(r.count(12));
    for (auto& p : list) {
      p.doc = r.u32();
      p.sentence = r.u32();
      p.token = r.u32();
      const auto& documents = store.documents();
      if (p.doc >= documents.size() || p.sentence >= documents[p.doc].sentences.size() ||
          p.token >= documents[p.doc].sentences[p.sentence].tokens.size()) {
        Reader::corrupt("posting points outside the sentence store");
      }
      if (store.token(p).key != key) Reader::corrupt("posting lemma disagrees with the stored token");
    }
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (!(list[k - 1] < list[k])) Reader::corrupt("posting list not strictly sorted");
    }
    total += list.size();
    if (!postings.emplace(std::move(key), std::move(list)).second) Reader::corrupt("duplicate lemma key");
  }
  if (total != store.token_count()) Reader::corrupt("posting count differs from token count");

  LemmaIndex::SurfaceMap surfaces;
  const std::uint32_t surface_count = r.count(8);
  for (std::uint32_t i = 0; i < surface_count; ++i) {
    std::string surface = r.str();
    std::string lemma = r.str();
    surfaces.emplace(std::move(surface), std::move(lemma));
  }
  if (!r.done()) Reader::corrupt("trailing bytes after payload");
  return {LemmaIndex(std::move(postings), std::move(surfaces), std::move(manifest)), std::move(store)};
}

struct Parts {
  IndexManifest manifest;
  std::string_view payload;
};

Parts split_file(std::string_view bytes, bool need_payload) {
  if (bytes.size() < kHeaderSize || bytes.substr(0, kMagic.size()) != kMagic) {
    Reader::corrupt("bad magic");
  }
  const auto version = static_cast<std::uint8_t>(bytes[8]);
  if (version != kIndexVersion) {
    throw Error(ErrorCode::kVersionMismatch, "index format version " + std::to_string(version) +
                                                 ", expected " + std::to_string(kIndexVersion));
  }
  Reader r(bytes.substr(kHeaderSize));
  std::string_view manifest_text = r.bytes(r.u64());
  Parts parts;
  try {
    parts.manifest = manifest_from_json(nlohmann::json::parse(manifest_text));
  } catch (const nlohmann::json::exception& e) {
    Reader::corrupt(std::string("manifest: ") + e.what());
  }
  if (parts.manifest.version != kIndexVersion) {
    throw Error(ErrorCode::kVersionMismatch, "manifest declares version " +
                                                 std::to_string(parts.manifest.version));
  }
  if (need_payload) {
    parts.payload = r.bytes(r.u64());
    if (!r.done()) Reader::corrupt("trailing bytes after payload");
  }
  return parts;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open index file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

nlohmann::json manifest_to_json(const IndexManifest& m) {
  nlohmann::json j;
  j["format"] = "ctsearch-index";
  j["version"] = m.version;
  j["build_timestamp"] = m.build_timestamp;
  j["lemma_count"] = m.lemma_count;
  j["token_count"] = m.token_count;
  j["payload_sha256"] = m.payload_sha256;
  nlohmann::json corpora = nlohmann::json::object();
  for (const auto& [id, c] : m.corpora) {
    corpora[id] = {{"documents", c.documents},
                   {"sentences", c.sentences},
                   {"tokens", c.tokens},
                   {"checksum", c.checksum}};
  }
  j["corpora"] = corpora;
  return j;
}

IndexManifest manifest_from_json(const nlohmann::json& j) {
  IndexManifest m;
  if (j.value("format", "") != "ctsearch-index") Reader::corrupt("manifest format tag");
  m.version = j.at("version").get<std::uint32_t>();
  m.build_timestamp = j.at("build_timestamp").get<std::int64_t>();
  m.lemma_count = j.at("lemma_count").get<std::size_t>();
  m.token_count = j.at("token_count").get<std::size_t>();
  m.payload_sha256 = j.at("payload_sha256").get<std::string>();
  for (const auto& [id, c] : j.at("corpora").items()) {
    CorpusSummary s;
    s.documents = c.at("documents").get<std::size_t>();
    s.sentences = c.at("sentences").get<std::size_t>();
    s.tokens = c.at("tokens").get<std::size_t>();
    s.checksum = c.at("checksum").get<std::string>();
    m.corpora[id] = std::move(s);
  }
  return m;
}

std::string serialize_index(const LemmaIndex& index, const SentenceStore& store) {
  const std::string payload = encode_payload(index, store);
  IndexManifest manifest = index.manifest();
  manifest.version = kIndexVersion;
  manifest.payload_sha256 = text::sha256_hex(payload);
  const std::string manifest_text = manifest_to_json(manifest).dump();

  Writer w;
  w.raw(kMagic);
  w.u8(static_cast<std::uint8_t>(kIndexVersion));
  w.u8(0);
  w.u8(0);
  w.u8(0);
  w.u64(manifest_text.size());
  w.raw(manifest_text);
  w.u64(payload.size());
  w.raw(payload);
  return w.take();
}

IndexManifest persist_index(const LemmaIndex& index, const SentenceStore& store,
                            const std::filesystem::path& path) {
  const std::string bytes = serialize_index(index, store);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return split_file(bytes, false).manifest;
}

IndexedCorpus deserialize_index(std::string_view bytes) {
  Parts parts = split_file(bytes, true);
  if (text::sha256_hex(parts.payload) != parts.manifest.payload_sha256) {
    throw Error(ErrorCode::kChecksumMismatch, "index payload does not match its manifest checksum");
  }
  return decode_payload(parts.payload, std::move(parts.manifest));
}

IndexedCorpus load_index(const std::filesystem::path& path) { return deserialize_index(read_all(path)); }

IndexManifest read_manifest(const std::filesystem::path& path) {
  return split_file(read_all(path), false).manifest;
}

}  // namespace ctsearch::index
