#include "stag/transfer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "stag/error.hpp"

namespace stag {

std::optional<GornAddress> resolve_attachment(const SyncPair& host, std::size_t comp,
                                              const GornAddress& src) {
  for (const Link& link : host.links) {
    if (link.comp == comp && link.src == src) return link.tgt;
  }
  return std::nullopt;
}

TargetDerivation transfer_derivation(const Derivation& d, const Grammar& g) {
  TargetDerivation out;
  out.uses = d.uses;
  std::sort(out.uses.begin(), out.uses.end());
  out.root_use = d.root_use;
  if (!d.find_use(d.root_use)) {
    throw Error(ErrorKind::dangling_use, "root use " + std::to_string(d.root_use) + " does not exist");
  }

  for (const Use& use : d.uses) {
    if (use.id == d.root_use) continue;
    const SyncPair& pair = g.at(use.pair);
    const Attachment* head = d.attachment_of(ComponentRef{use.id, pair.source.head});
    if (!head) {
      throw Error(ErrorKind::dangling_use, "use " + std::to_string(use.id) + " (" + use.pair +
                                               ") has no head attachment");
    }
    const Use* host_use = d.find_use(head->host.use);
    if (!host_use) {
      throw Error(ErrorKind::dangling_use, "use " + std::to_string(use.id) +
                                               " attaches to missing use " +
                                               std::to_string(head->host.use));
    }
    const SyncPair& host = g.at(host_use->pair);
    auto target = resolve_attachment(host, head->host.comp, head->address);
    if (!target) {
      throw Error(ErrorKind::untranslatable_attachment,
                  "head of use " + std::to_string(use.id) + " (" + use.pair + ") attaches at unlinked " +
                      host.name + " component " + std::to_string(head->host.comp) + " node " +
                      head->address.str());
    }
    out.attachments.push_back(
        TargetAttachment{use.id, head->host.use, *target, head->op, head->host.comp, head->address});
  }
  std::sort(out.attachments.begin(), out.attachments.end(),
            [](const TargetAttachment& a, const TargetAttachment& b) {
              return std::tie(a.host, a.address, a.child) < std::tie(b.host, b.address, b.child);
            });
  return out;
}

namespace {

const std::string& name_of(const TargetDerivation& d, int id) {
  static const std::string kUnknown = "?";
  for (const Use& use : d.uses) {
    if (use.id == id) return use.pair;
  }
  return kUnknown;
}

}  // namespace

std::string render_target_derivation(const TargetDerivation& d) {
  std::string out = name_of(d, d.root_use) + "#" + std::to_string(d.root_use) + "\n";
  std::set<int> visited;
  std::function<void(int, int)> visit = [&](int host, int depth) {
    if (!visited.insert(host).second) return;
    for (const TargetAttachment& a : d.attachments) {
      if (a.host != host) continue;
      out += std::string(2 * depth, ' ') + name_of(d, a.child) + "#" + std::to_string(a.child) + "@" +
             a.address.str() + "(" + std::string(to_string(a.op)) + ")\n";
      visit(a.child, depth + 1);
    }
  };
  visit(d.root_use, 1);
  return out;
}

std::string render_transfer_trace(const TargetDerivation& d) {
  std::string out = name_of(d, d.root_use) + "#" + std::to_string(d.root_use) +
                    ": head root -> target root\n";
  for (const TargetAttachment& a : d.attachments) {
    out += name_of(d, a.child) + "#" + std::to_string(a.child) + ": " + name_of(d, a.host) + "#" +
           std::to_string(a.host) + " comp " + std::to_string(a.source_comp) + " @" +
           a.source_address.str() + " -> @" + a.address.str() + " (" + std::string(to_string(a.op)) +
           ")\n";
  }
  return out;
}

}  // namespace stag
