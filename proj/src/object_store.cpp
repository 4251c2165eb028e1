#include "proofgraph/object_store.hpp"

#include <algorithm>
#include <fstream>

#include "proofgraph/canonical.hpp"
#include "proofgraph/errors.hpp"

namespace fs = std::filesystem;

namespace proofgraph {

namespace {

const char* kind_name(std::uint8_t tag_byte) {
  switch (tag_byte) {
    case tag::kNode: return "node";
    case tag::kModelRecord: return "model";
    case tag::kTree: return "tree";
    case tag::kCommit: return "commit";
    case tag::kBlob: return "blob";
    default: return "unknown";
  }
}

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::StorageError, "cannot read " + path.string());
  }
  Bytes bytes((std::istreambuf_iterator<char>(in)),
              std::istreambuf_iterator<char>());
  return bytes;
}

void write_file_atomic_raw(const fs::path& path, const void* data,
                           std::size_t size) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::StorageError, "cannot write " + tmp.string());
    }
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) {
      throw Error(ErrorCode::StorageError, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::StorageError,
                "rename to " + path.string() + " failed: " + ec.message());
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, const Bytes& bytes) {
  write_file_atomic_raw(path, bytes.data(), bytes.size());
}

ObjectStore ObjectStore::init(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / "objects", ec);
  if (!ec) fs::create_directories(dir / "refs", ec);
  if (ec) {
    throw Error(ErrorCode::StorageError,
                "cannot initialize store at " + dir.string() + ": " + ec.message());
  }
  return ObjectStore(dir);
}

ObjectStore ObjectStore::open(const fs::path& dir) {
  if (!exists_at(dir)) {
    throw Error(ErrorCode::StorageError,
                "no store at " + dir.string() + " (run init first)");
  }
  return ObjectStore(dir);
}

bool ObjectStore::exists_at(const fs::path& dir) {
  return fs::is_directory(dir / "objects") && fs::is_directory(dir / "refs");
}

std::vector<ObjectId> ObjectStore::list_objects() const {
  std::vector<ObjectId> ids;
  for (const auto& bucket : fs::directory_iterator(root_ / "objects")) {
    if (!bucket.is_directory()) continue;
    for (const auto& entry : fs::directory_iterator(bucket.path())) {
      if (!entry.is_regular_file()) continue;
      ids.push_back(ObjectId::from_hex(bucket.path().filename().string() +
                                       entry.path().filename().string()));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

fs::path ObjectStore::object_path(const ObjectId& id) const {
  std::string hex = id.hex();
  return root_ / "objects" / hex.substr(0, 2) / hex.substr(2);
}

ObjectId ObjectStore::put(const Bytes& bytes) {
  ObjectId id = ObjectId::of(bytes);
  fs::path path = object_path(id);
  if (fs::exists(path)) return id;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) {
    throw Error(ErrorCode::StorageError, "cannot create object directory");
  }
  write_file_atomic_raw(path, bytes.data(), bytes.size());
  return id;
}

bool ObjectStore::contains(const ObjectId& id) const {
  return fs::exists(object_path(id));
}

Bytes ObjectStore::get(const ObjectId& id) const {
  fs::path path = object_path(id);
  if (!fs::exists(path)) {
    // Callers check commit existence up front; a referenced object that is
    // absent mid-traversal is an integrity failure.
    throw Error(ErrorCode::CorruptObject,
                "referenced object " + id.hex() + " is missing");
  }
  Bytes bytes = read_file(path);
  if (ObjectId::of(bytes) != id) {
    throw Error(ErrorCode::CorruptObject,
                "object " + id.hex() + " fails hash verification");
  }
  return bytes;
}

StorageStats ObjectStore::stats() const {
  StorageStats stats;
  fs::path objects = root_ / "objects";
  for (const auto& bucket : fs::directory_iterator(objects)) {
    if (!bucket.is_directory()) continue;
    for (const auto& entry : fs::directory_iterator(bucket.path())) {
      if (!entry.is_regular_file()) continue;
      stats.object_count += 1;
      stats.total_bytes += entry.file_size();
      std::ifstream in(entry.path(), std::ios::binary);
      int first = in.get();
      const char* kind =
          first >= 0 ? kind_name(static_cast<std::uint8_t>(first)) : "unknown";
      stats.objects_by_kind[kind] += 1;
    }
  }
  return stats;
}

void ObjectStore::write_ref(const std::string& name, const ObjectId& id) {
  std::string line = id.hex() + "\n";
  write_file_atomic_raw(root_ / "refs" / name, line.data(), line.size());
}

std::optional<ObjectId> ObjectStore::read_ref(const std::string& name) const {
  fs::path path = root_ / "refs" / name;
  if (!fs::exists(path)) return std::nullopt;
  Bytes bytes = read_file(path);
  std::string text(bytes.begin(), bytes.end());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return ObjectId::from_hex(text);
}

}  // namespace proofgraph
