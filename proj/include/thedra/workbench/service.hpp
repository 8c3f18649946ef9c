#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "thedra/workbench/document.hpp"

namespace thedra::workbench {

// Designs stored as <root>/designs/<id>.json. Writes are serialized by a
// per-workspace lock and land through rename, so readers never see partial
// files.
class Workspace {
public:
    explicit Workspace(std::filesystem::path root);

    const std::filesystem::path& root() const noexcept { return root_; }
    // Returns the content id; storing the same document twice is a no-op.
    std::string store(const DesignDocument& doc);
    std::optional<DesignDocument> fetch(const std::string& id) const;

private:
    std::filesystem::path root_;
    std::mutex write_lock_;
};

// THEDRA_WORKSPACE if set, else ./thedra-workspace.
std::filesystem::path default_workspace();

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

// Request routing independent of the transport:
//   POST /designs                    -> 201 {"id"}
//   GET  /designs/{id}               -> the stored document
//   GET  /designs/{id}/range         -> parameter range
//   GET  /designs/{id}/mesh?t=&resolution=&format=obj
//   GET  /designs/{id}/classify
Response handle_request(Workspace& workspace, const std::string& method, const std::string& path,
                        const std::map<std::string, std::string>& query, const std::string& body);

// HTTP front end over a workspace.
class Server {
public:
    explicit Server(Workspace& workspace);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds and serves until stop(); port 0 picks a free port.
    bool listen(const std::string& host, int port);
    // Binds without serving and returns the port (or -1).
    int bind(const std::string& host, int port);
    // Serves on a port obtained from bind().
    bool serve();
    void stop();
    bool running() const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

}  // namespace thedra::workbench
