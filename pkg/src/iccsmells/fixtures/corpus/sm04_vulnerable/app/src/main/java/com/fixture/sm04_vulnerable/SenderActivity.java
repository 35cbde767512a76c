package com.fixture.sm04_vulnerable;

import android.app.Activity;
import android.content.Intent;
import android.net.Uri;

public class SenderActivity extends Activity {
    static final String ACTION_PING = "com.fixture.action.PING";

    void ping() {
        sendBroadcast(new Intent(ACTION_PING));
    }

    void view(Uri uri) {
        Intent view = new Intent(Intent.ACTION_VIEW, uri);
        view.putExtra("token", "secret");
        startActivity(view);
    }

    void ordered() {
        Intent i = new Intent();
        i.setAction("com.fixture.action.ORDERED");
        sendOrderedBroadcast(i, null);
    }

    void forward(Intent incoming) {
        startActivity(incoming);
    }
}
