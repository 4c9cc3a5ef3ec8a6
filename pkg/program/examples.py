"""
Example projects shipped with the CLI (`scb.py examples <dir>`).

Each builder returns a Program; SHIPPED_EXAMPLES maps output file names to
builders. LINT_FIXTURES are programs used to demonstrate the linter; the examples
command writes them next to the shipped examples.
"""

from typing import Callable, Dict, List

from program.ast import Block, Program
from program.builders import (
    block,
    change_var,
    flag,
    foreach,
    key,
    program,
    project_meta,
    script,
    set_var,
    sprite,
    user_meta,
    var,
    variable,
)
from program.opcodes import Category, opcodes_in

VIEWER = block("comm_viewer_username")
ANSWER = block("answer")


def _say(value) -> Block:
    return block("say", value)


def _join(*parts) -> Block:
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = block("join", part, result)
    return result


def _sum(*terms) -> Block:
    result = terms[0]
    for term in terms[1:]:
        result = block("add", result, term)
    return result


def _length(value) -> Block:
    return block("length_of", value)


def _uses(category: str) -> Block:
    return block("comm_project_uses_category", category=category)


def list_titles_literal(username: str = "scratchteam") -> Program:
    """When space is pressed, say the title of every project shared by one user"""
    return program(sprite(
        "Cat",
        script(key("space"), foreach("shared", username, _say(project_meta("title")))),
    ))


def list_titles() -> Program:
    """Same listing, asking which user to show instead of hard-coding it"""
    return program(sprite(
        "Cat",
        script(
            key("space"),
            block("ask", "Whose projects should I list?"),
            foreach("shared", ANSWER, _say(project_meta("title"))),
        ),
    ))


def spain_followers() -> Program:
    """Followers of a user who list Spain as their country"""
    return program(sprite(
        "Cat",
        script(
            flag(),
            block("ask", "Whose followers should I search?"),
            foreach(
                "followers", ANSWER,
                block("if", block("eq", user_meta("country"), "spain"),
                      body=[_say(user_meta("username"))]),
            ),
        ),
    ))


def my_sound_projects() -> Program:
    """Titles of the viewer's projects that use sound blocks"""
    return program(sprite(
        "Cat",
        script(
            flag(),
            foreach(
                "shared", VIEWER,
                block("if", _uses(Category.SOUND.value), body=[_say(project_meta("title"))]),
            ),
        ),
    ))


def sound_recommender() -> Program:
    """Sound projects favorited by the people the viewer follows"""
    return program(sprite(
        "Cat",
        script(
            flag(),
            foreach(
                "following", VIEWER,
                foreach(
                    "favorited", user_meta("username"),
                    block("if", _uses(Category.SOUND.value), body=[_say(project_meta("title"))]),
                ),
            ),
        ),
    ))


def _find_viewer_about(outer: str, inner: str) -> Block:
    """Walk outer→inner relation looking for the viewer's own profile"""
    return foreach(
        outer, VIEWER,
        foreach(
            inner, user_meta("username"),
            block(
                "if",
                block("and", block("eq", var("found"), 0), block("eq", user_meta("username"), VIEWER)),
                body=[change_var("total", _length(user_meta("about"))), set_var("found", 1)],
            ),
        ),
    )


def talkative() -> Program:
    """
    Talkative score: total length of titles and descriptions of the viewer's
    shared projects, plus the length of the viewer's username and about-me.
    """
    return program(sprite(
        "Talker",
        script(
            flag(),
            set_var("total", 0),
            set_var("found", 0),
            foreach(
                "shared", VIEWER,
                change_var("total", _length(project_meta("title"))),
                change_var("total", _length(project_meta("description"))),
            ),
            change_var("total", _length(VIEWER)),
            _find_viewer_about("following", "followers"),
            block("if", block("eq", var("found"), 0),
                  body=[_find_viewer_about("followers", "following")]),
            _say(_join("Talkative score: ", var("total"))),
        ),
        variables=[variable("total"), variable("found")],
    ))


def _category_var(category: Category) -> str:
    return f"n_{category.value}"


def doughnut_data() -> Program:
    """
    Share of each block category over all projects shared by a prompted user.

    Fractions are divided by the prompted user's own block total, so they always
    add up to one whoever runs the project.
    """
    categories = list(Category)
    per_project: List[Block] = []
    for category in categories:
        counts = [block("comm_project_block_count", opcode=op) for op in opcodes_in(category)]
        per_project.append(change_var(_category_var(category), _sum(*counts)))

    report = [
        block(
            "if", block("gt", var(_category_var(c)), 0),
            body=[_say(_join(c.value, " ", block("div", var(_category_var(c)), var("total"))))],
        )
        for c in categories
    ]

    return program(sprite(
        "Doughnut",
        script(
            flag(),
            block("ask", "Whose blocks should I chart?"),
            *[set_var(_category_var(c), 0) for c in categories],
            foreach("shared", ANSWER, *per_project),
            set_var("total", _sum(*[var(_category_var(c)) for c in categories])),
            block("if", block("gt", var("total"), 0), body=report),
        ),
        variables=[variable(_category_var(c)) for c in categories] + [variable("total")],
    ))


def loveits_vs_favorites() -> Program:
    """Accumulate love-its and favorites of every viewer's projects in cloud variables"""
    return program(
        sprite(
            "Collector",
            script(
                flag(),
                change_var("visitors", 1),
                foreach(
                    "shared", VIEWER,
                    change_var("loves", project_meta("loves")),
                    change_var("favorites", project_meta("favorites")),
                ),
            ),
            variables=[
                variable("loves", cloud=True),
                variable("favorites", cloud=True),
                variable("visitors", cloud=True),
            ],
        ),
        cloud_project_id=1,
    )


def dressup_wallet() -> Program:
    """One dollar per shared project, one diamond per follower"""
    return program(sprite(
        "Doll",
        script(
            flag(),
            set_var("dollars", 0),
            set_var("diamonds", 0),
            foreach("shared", VIEWER, change_var("dollars", 1)),
            foreach("followers", VIEWER, change_var("diamonds", 1)),
            _say(_join("Dollars: ", var("dollars"))),
            _say(_join("Diamonds: ", var("diamonds"))),
        ),
        variables=[variable("dollars"), variable("diamonds")],
    ))


def average_loves() -> Program:
    """Average number of love-its over the viewer's shared projects"""
    return program(sprite(
        "Cat",
        script(
            flag(),
            set_var("sum", 0),
            set_var("count", 0),
            foreach(
                "shared", VIEWER,
                change_var("sum", project_meta("loves")),
                change_var("count", 1),
            ),
            block(
                "if_else", block("gt", var("count"), 0),
                body=[_say(_join("Average no. of loves: ", block("div", var("sum"), var("count"))))],
                else_=[_say("Average no. of loves: 0")],
            ),
        ),
        variables=[variable("sum"), variable("count")],
    ))


def island() -> Program:
    """
    Island generated from the viewer's activity: stars in the sky for favourited
    projects, houses for followers, trees for shared projects.
    """
    features = [("stars", "favorited"), ("houses", "followers"), ("trees", "shared")]
    return program(sprite(
        "Island",
        script(
            flag(),
            *[set_var(name, 0) for name, _ in features],
            *[foreach(relation, VIEWER, change_var(name, 1)) for name, relation in features],
            *[_say(_join(f"{name.capitalize()}: ", var(name))) for name, _ in features],
        ),
        variables=[variable(name) for name, _ in features],
    ))


def followers_of_followers() -> Program:
    """Total number of followers the viewer's followers have"""
    return program(sprite(
        "Cat",
        script(
            flag(),
            set_var("total", 0),
            foreach(
                "followers", VIEWER,
                foreach("followers", user_meta("username"), change_var("total", 1)),
            ),
            _say(_join("Followers of your followers: ", var("total"))),
        ),
        variables=[variable("total")],
    ))


def ice_cream() -> Program:
    """One scoop per follower of a prompted user"""
    return program(sprite(
        "Cone",
        script(
            flag(),
            block("ask", "Whose ice cream should I build?"),
            _say("cone"),
            foreach("followers", ANSWER, _say(_join("scoop for ", user_meta("username")))),
        ),
    ))


def accessor_outside_loop() -> Program:
    """User accessor used outside any loop, expecting the viewer's data"""
    return program(sprite(
        "Cat",
        script(flag(), _say(_join("You are from ", user_meta("country")))),
    ))


def stats_in_repeat() -> Program:
    """Community total polled inside a loop"""
    return program(sprite(
        "Cat",
        script(flag(), block("repeat", 10, body=[_say(block("comm_total", kind="projects"))])),
    ))


SHIPPED_EXAMPLES: Dict[str, Callable[[], Program]] = {
    "fig1.json": list_titles,
    "spain_followers.json": spain_followers,
    "my_sound_projects.json": my_sound_projects,
    "sound_recommender.json": sound_recommender,
    "talkative.json": talkative,
    "doughnut_data.json": doughnut_data,
    "loveits_vs_favorites.json": loveits_vs_favorites,
    "dressup_wallet.json": dressup_wallet,
    "average_loves.json": average_loves,
    "ice_cream.json": ice_cream,
    "island.json": island,
    "followers_of_followers.json": followers_of_followers,
}

LINT_FIXTURES: Dict[str, Callable[[], Program]] = {
    "fig1_scratchteam.json": list_titles_literal,
    "misconception1.json": accessor_outside_loop,
    "stats_in_repeat.json": stats_in_repeat,
}

__all__ = [
    "SHIPPED_EXAMPLES",
    "LINT_FIXTURES",
    "list_titles",
    "list_titles_literal",
    "spain_followers",
    "my_sound_projects",
    "sound_recommender",
    "talkative",
    "doughnut_data",
    "loveits_vs_favorites",
    "dressup_wallet",
    "average_loves",
    "ice_cream",
    "island",
    "followers_of_followers",
    "accessor_outside_loop",
    "stats_in_repeat",
]
