#include "automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace morfwork::fsa
{
	Pattern Pattern::atomOf(PairSet set)
	{
		Pattern p;
		p.kind = Kind::Atom;
		p.atom = std::move(set);
		return p;
	}

	Pattern Pattern::sequence(std::vector<Pattern> items)
	{
		if (items.size() == 1) return std::move(items.front());
		Pattern p;
		p.kind = items.empty() ? Kind::Empty : Kind::Sequence;
		p.items = std::move(items);
		return p;
	}

	Pattern Pattern::alternation(std::vector<Pattern> items)
	{
		if (items.size() == 1) return std::move(items.front());
		Pattern p;
		p.kind = Kind::Alternation;
		p.items = std::move(items);
		return p;
	}

	Pattern Pattern::star(Pattern inner)
	{
		Pattern p;
		p.kind = Kind::Star;
		p.items.push_back(std::move(inner));
		return p;
	}

	Pattern Pattern::optional(Pattern inner)
	{
		Pattern p;
		p.kind = Kind::Optional;
		p.items.push_back(std::move(inner));
		return p;
	}

	namespace
	{
		struct Nfa
		{
			struct Edge
			{
				int label; // index into labels, -1 for epsilon
				int target;
			};
			std::vector<std::vector<Edge>> edges;
			std::vector<PairSet> labels;
			PairSet any;

			int add()
			{
				edges.emplace_back();
				return static_cast<int>(edges.size()) - 1;
			}

			// Thompson construction; returns (entry, exit).
			std::pair<int, int> build(const Pattern& p)
			{
				switch (p.kind)
				{
				case Pattern::Kind::Empty:
				{
					int s = add();
					return { s, s };
				}
				case Pattern::Kind::Atom:
				{
					int s = add(), e = add();
					labels.push_back(p.atom);
					edges[s].push_back({ static_cast<int>(labels.size()) - 1, e });
					return { s, e };
				}
				case Pattern::Kind::Sequence:
				{
					auto [s, e] = build(p.items.front());
					for (size_t i = 1; i < p.items.size(); ++i)
					{
						auto [s2, e2] = build(p.items[i]);
						edges[e].push_back({ -1, s2 });
						e = e2;
					}
					return { s, e };
				}
				case Pattern::Kind::Alternation:
				{
					int s = add(), e = add();
					for (auto& item : p.items)
					{
						auto [s2, e2] = build(item);
						edges[s].push_back({ -1, s2 });
						edges[e2].push_back({ -1, e });
					}
					return { s, e };
				}
				case Pattern::Kind::Star:
				{
					int s = add();
					auto [s2, e2] = build(p.items.front());
					edges[s].push_back({ -1, s2 });
					edges[e2].push_back({ -1, s });
					return { s, s };
				}
				case Pattern::Kind::Optional:
				{
					int s = add(), e = add();
					auto [s2, e2] = build(p.items.front());
					edges[s].push_back({ -1, s2 });
					edges[s].push_back({ -1, e });
					edges[e2].push_back({ -1, e });
					return { s, e };
				}
				}
				return { add(), add() };
			}

			void closure(std::vector<int>& set) const
			{
				std::vector<char> seen(edges.size(), 0);
				std::vector<int> stack(set.begin(), set.end());
				for (int s : set) seen[s] = 1;
				while (!stack.empty())
				{
					int s = stack.back();
					stack.pop_back();
					for (auto& e : edges[s])
					{
						if (e.label < 0 && !seen[e.target])
						{
							seen[e.target] = 1;
							set.push_back(e.target);
							stack.push_back(e.target);
						}
					}
				}
				std::sort(set.begin(), set.end());
			}
		};
	}

	Dfa compile(const Pattern& pattern, size_t alphabetSize, bool anyPrefix)
	{
		Nfa nfa;
		nfa.any.assign(alphabetSize, true);
		int entry, exit;
		if (anyPrefix)
		{
			Pattern anyStar = Pattern::star(Pattern::atomOf(nfa.any));
			auto [s1, e1] = nfa.build(anyStar);
			auto [s2, e2] = nfa.build(pattern);
			nfa.edges[e1].push_back({ -1, s2 });
			entry = s1;
			exit = e2;
		}
		else
		{
			std::tie(entry, exit) = nfa.build(pattern);
		}

		Dfa dfa;
		std::map<std::vector<int>, int> ids;
		std::deque<std::vector<int>> queue;
		std::vector<int> init{ entry };
		nfa.closure(init);
		ids.emplace(init, 0);
		dfa.next.emplace_back(alphabetSize, -1);
		dfa.accepting.push_back(std::binary_search(init.begin(), init.end(), exit));
		queue.push_back(init);

		while (!queue.empty())
		{
			auto cur = std::move(queue.front());
			queue.pop_front();
			const int from = ids.at(cur);
			for (size_t sym = 0; sym < alphabetSize; ++sym)
			{
				std::vector<int> target;
				for (int s : cur)
					for (auto& e : nfa.edges[s])
						if (e.label >= 0 && nfa.labels[e.label][sym]) target.push_back(e.target);
				if (target.empty()) continue;
				std::sort(target.begin(), target.end());
				target.erase(std::unique(target.begin(), target.end()), target.end());
				nfa.closure(target);
				auto it = ids.find(target);
				if (it == ids.end())
				{
					const int id = static_cast<int>(dfa.next.size());
					it = ids.emplace(target, id).first;
					dfa.next.emplace_back(alphabetSize, -1);
					dfa.accepting.push_back(std::binary_search(target.begin(), target.end(), exit));
					queue.push_back(target);
				}
				dfa.next[from][sym] = it->second;
			}
		}
		return dfa;
	}
}
