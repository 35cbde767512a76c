package com.fixture.sm10_benign;

import android.app.Activity;
import android.content.BroadcastReceiver;
import android.content.IntentFilter;
import androidx.localbroadcastmanager.content.LocalBroadcastManager;

public class ListenActivity extends Activity {
    private static final String SENDER_PERMISSION = "com.fixture.permission.SEND_UPDATES";

    void start(BroadcastReceiver receiver) {
        registerReceiver(receiver, new IntentFilter("com.fixture.action.UPDATE"), SENDER_PERMISSION, null);
    }

    void local(BroadcastReceiver receiver) {
        LocalBroadcastManager.getInstance(this).registerReceiver(receiver, new IntentFilter("local"));
        LocalBroadcastManager manager = LocalBroadcastManager.getInstance(this);
        manager.registerReceiver(receiver, new IntentFilter("local.two"));
    }
}
